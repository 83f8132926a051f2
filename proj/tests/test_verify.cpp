#include "doctest.h"
#include "oracles.hpp"
#include "wildcantor/verify.hpp"

#include <cmath>
#include <random>

using namespace wildcantor;

namespace {

VerifyOptions coarse() {
    VerifyOptions o;
    o.sample_step = 1e-3;
    return o;
}

// Minimum over every segment pair, no pruning.
double brute_copy_distance(const LadderCopy& a, const LadderCopy& b) {
    double best = 1e300;
    for (const auto& A : a.loops_d)
        for (const auto& B : b.loops_d)
            for (std::size_t e = 0; e < A.size(); ++e)
                for (std::size_t f = 0; f < B.size(); ++f) best = std::min(best, segment_distance(A.edge(e), B.edge(f)));
    return best;
}

}  // namespace

TEST_CASE("sigma dichotomy and tau certificates at genus one") {
    for (std::int64_t N : {9, 25}) {
        const auto c = construct(1, N);
        const auto s = certify_sigma_dichotomy(c);
        CHECK(s.status == Status::Pass);
        CHECK(s.figure_mode);
        CHECK(s.stat_value("dichotomy_mismatches") == 0);
        CHECK(s.stat_value("pairs_total") == doctest::Approx(4.0 * N * (4.0 * N - 1) / 2));
        const auto sep = certify_tau_separation(c);
        CHECK(sep.status == Status::Pass);
        CHECK(sep.stat_value("min_distance") >= sep.stat_value("bound"));
        const auto prox = certify_tau_proximity(c);
        CHECK(prox.status == Status::Pass);
        CHECK(prox.stat_value("max_distance") <= prox.stat_value("bound"));
    }
}

TEST_CASE("tau separation agrees with brute force on random pairs") {
    const auto c = construct(1, 25);
    const auto sep = certify_tau_separation(c);
    std::mt19937_64 rng(7);
    const std::size_t m = c.m();
    for (int t = 0; t < 100; ++t) {
        const std::size_t a = rng() % m, b = rng() % m;
        if (a == b) continue;
        CHECK(brute_copy_distance(c.copies[a], c.copies[b]) >= sep.stat_value("min_distance") - 1e-12);
    }
    double brute_min = 1e300;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b) brute_min = std::min(brute_min, brute_copy_distance(c.copies[a], c.copies[b]));
    CHECK(brute_min == doctest::Approx(sep.stat_value("min_distance")).epsilon(1e-9));
}

TEST_CASE("separation and proximity scale like 1/N") {
    const auto a = construct(1, 9), b = construct(1, 25);
    const double sa = certify_tau_separation(a).stat_value("min_distance");
    const double sb = certify_tau_separation(b).stat_value("min_distance");
    CHECK(sa * 9 == doctest::Approx(sb * 25).epsilon(1e-9));
    const double pa = certify_tau_proximity(a).stat_value("bound");
    const double pb = certify_tau_proximity(b).stat_value("bound");
    CHECK(pa * 9 == doctest::Approx(pb * 25).epsilon(1e-9));
}

TEST_CASE("linking matrix at genus one") {
    const auto c = construct(1, 9);
    const auto [cert, M] = certify_linking(c, {}, {});
    CHECK(cert.status == Status::Pass);
    CHECK(cert.stat_value("completely_linked") == cert.stat_value("intersecting_sigma_pairs"));
    const std::size_t m = c.m();
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b) {
            const int v = M.at(a, b, 0, 0);
            CHECK(v == M.at(b, a, 0, 0));
            CHECK((std::abs(v) == 1) == sigma_predicate(c, a, b));
        }
    // Independent check of a few entries against the quadrature oracle.
    for (std::size_t a : {std::size_t{0}, std::size_t{5}, std::size_t{17}}) {
        const std::size_t b = (a + 1) % m;
        const double q = oracle::quadrature_linking(c.copies[a].loops_d[0], c.copies[b].loops_d[0]);
        CHECK(std::lround(q) == M.at(a, b, 0, 0));
    }
    CHECK(M.triples().size() == m);
}

TEST_CASE("sampled linking plan is deterministic") {
    const auto c = construct(1, 25);
    LinkingPlan plan;
    plan.full = false;
    plan.adjacent = 20;
    plan.nonadjacent = 20;
    const auto [c1, m1] = certify_linking(c, plan, {});
    const auto [c2, m2] = certify_linking(c, plan, {});
    CHECK(c1.status == Status::Pass);
    CHECK(m1.entries == m2.entries);
    CHECK(c1.stat_value("pairs_computed") == 40);
}

TEST_CASE("nesting fails below the scaffold density and passes above it") {
    CHECK(certify_nesting(construct(1, 9), coarse()).status == Status::Fail);
    const auto ok = certify_nesting(construct(1, 121), coarse());
    CHECK(ok.status == Status::Pass);
    CHECK(ok.margin > 0);
}

TEST_CASE("genus structure at genus one, depths one and two") {
    const auto c = construct(1, 9);
    CHECK(genus_structure_certificate(c, 1).status == Status::Pass);
    const auto d2 = genus_structure_certificate(c, 2);
    CHECK(d2.status == Status::Pass);
    CHECK(d2.stat_value("depth2_transport_mismatches") == 0);
    CHECK_THROWS_AS(genus_structure_certificate(c, 3), std::invalid_argument);
}

TEST_CASE("genus two collisions are reported with a witness") {
    const auto c = construct(2, 25);
    const auto s = certify_sigma_dichotomy(c);
    CHECK(s.status == Status::Fail);
    CHECK_FALSE(s.witness.first.empty());
    CHECK(certify_tau_separation(c).status == Status::Fail);
}

TEST_CASE("jobs do not change results") {
    const auto c = construct(1, 25);
    VerifyOptions one, four;
    four.jobs = 4;
    CHECK(certify_tau_separation(c, one).stat_value("min_distance") == certify_tau_separation(c, four).stat_value("min_distance"));
    CHECK(certify_linking(c, {}, one).second.entries == certify_linking(c, {}, four).second.entries);
}
