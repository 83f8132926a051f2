#include "doctest.h"
#include "wildcantor/maps.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace wildcantor;

namespace {

QSqrt2 Q(long n, long d = 1) { return QSqrt2::rational(n, d); }

std::vector<ExactPoint3> random_exact_points(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> d(-500, 500);
    std::vector<ExactPoint3> out;
    for (std::size_t k = 0; k < n; ++k)
        out.push_back({Q(d(rng), 3) + QSqrt2::sqrt2() * Q(d(rng), 5), Q(d(rng), 7), Q(d(rng), 2)});
    return out;
}

QSqrt2 dist2(const ExactPoint3& a, const ExactPoint3& b) { return norm2(a - b); }

}  // namespace

TEST_CASE("iota maps are exact isometries of the printed form") {
    const auto pts = random_exact_points(1000, 3);
    for (int k : {1, 2, 3}) {
        const auto f1 = iota1(k), f2 = iota2(k), f3 = iota3(k), f = iota();
        for (std::size_t t = 0; t < pts.size(); ++t) {
            const auto& p = pts[t];
            CHECK(f1.apply(f1.apply(p)) == p);
            CHECK(f2.apply(f2.apply(p)) == p);
            CHECK(f.apply(f.apply(p)) == p);
            CHECK(f3.apply(f3.apply(f3.apply(f3.apply(p)))) == p);
            CHECK_FALSE(f3.apply(f3.apply(p)) == p);
            const auto& q = pts[(t + 1) % pts.size()];
            for (const auto* g : {&f1, &f2, &f3, &f})
                CHECK(dist2(g->apply(p), g->apply(q)) == dist2(p, q));
        }
    }
    const ExactPoint3 o{Q(0), Q(0), Q(0)};
    CHECK(iota1(1).apply(o) == ExactPoint3{Q(2), Q(0), Q(0)});
    // iota2 and iota3 fix their printed axes.
    const int C31 = width_prefix(3, 1);
    CHECK(iota2(1).apply(ExactPoint3{Q(C31) + Q(3, 2), Q(1, 2), Q(5)}) == ExactPoint3{Q(C31) + Q(3, 2), Q(1, 2), Q(5)});
    const int C21 = width_prefix(2, 1);
    CHECK(iota3(1).apply(ExactPoint3{Q(2 * C21 + 1, 2), Q(1, 2), Q(-3)}) == ExactPoint3{Q(2 * C21 + 1, 2), Q(1, 2), Q(-3)});
    // iota2 swaps the loops on either side of the middle loop of the genus-three core.
    const auto L3 = build_ladder(3, 9);
    for (const auto& p : L3.loops[0].vertices()) {
        const auto q = iota2(1).apply(p);
        CHECK(std::find(L3.loops[2].vertices().begin(), L3.loops[2].vertices().end(), q) != L3.loops[2].vertices().end());
    }
    CHECK(iota().apply(ExactPoint3{Q(1), Q(2), Q(3)}) == ExactPoint3{Q(1), Q(-2), Q(-3)});
}

TEST_CASE("iota1 fixes the shared edge of the genus-two core and flips z") {
    const auto f = iota1(1);
    for (int s = 0; s <= 8; ++s) {
        const ExactPoint3 p{Q(1), Q(s, 8), Q(1, 3)};
        const auto q = f.apply(p);
        CHECK(q.x == p.x);
        CHECK(q.y == p.y);
        CHECK(q.z == -p.z);
    }
}

TEST_CASE("folding invariance permutes copies") {
    const auto r = check_folding_invariance(2, 25);
    CHECK(r.certificate.status == Status::Pass);
    const auto c = construct(2, 25);
    for (std::size_t t = 0; t < c.m(); ++t) {
        const auto u = r.permutation[t];
        CHECK(r.permutation[u] == t);
        // Loop one folds onto loop two.
        CHECK(c.copies[t].i != c.copies[u].i);
    }
    const auto r6 = check_folding_invariance(6, 25);
    CHECK(r6.certificate.status == Status::Pass);
    CHECK(r6.certificate.stat_value("fixed_copies") == 0);
    CHECK_THROWS_AS(check_folding_invariance(3, 25), std::invalid_argument);
}

TEST_CASE("odd decompositions") {
    const auto d = decompose_odd(3, 121);
    CHECK(d.U.size() == 6);
    CHECK(d.V.size() == 3);
    const double C = width_prefix(3, 1);
    const Point3 p1{C + 0.25, 1 + 0.035, 0};
    CHECK(region_membership(p1, d.U[0]));
    CHECK(classify_odd(p1, d).regions == std::vector<std::string>{"U1"});
    CHECK(d.U[1].satisfies_slabs({C + 1, 0.75, 0}));
    CHECK_FALSE(region_membership({C + 1, 0.75, 0}, d.U[1]));  // inside the hole of the torus
    const Point3 p2{C + 1, 1 + 0.035, 0};
    CHECK(region_membership(p2, d.U[1]));
    CHECK(classify_odd(p2, d).placement == SlabPlacement::Region);
    // The printed thresholds leave strips such as C + 1/2 < x < C + 3/4 uncovered.
    const auto gap = classify_odd({C + 0.6, 1 + 0.035, 0}, d);
    CHECK(gap.placement == SlabPlacement::Gap);
    CHECK(classify_odd({C + 0.6, 0.5, 0}, d).placement == SlabPlacement::Outside);
    // Points on a copy core lie in a sub-torus.
    Point3 core_pt{0, 0, 1};
    for (const auto& v : d.U[0].domain->construction.copies[3].loops_d[0].vertices())
        if (std::abs(v.z) < std::abs(core_pt.z)) core_pt = v;
    CHECK(classify_odd(core_pt, d).placement == SlabPlacement::SubTorus);
    CHECK_THROWS_AS(decompose_odd(4), std::invalid_argument);
    // V regions live in the genus k + 1 torus.
    const double Ck = width_prefix(2, 1);
    CHECK(region_membership({Ck + 0.75, 1 + 0.035, 0}, d.V[1]));
    CHECK(region_membership({Ck + 0.75, -0.035, 0}, d.V[2]));
    CHECK(region_membership({0.25, -0.035, 0}, d.V[0]));
}

TEST_CASE("winding, degree and radii") {
    CHECK(degree(1, 529) == 2116);
    CHECK(degree(2, 625) == 8 * 625);
    for (int k : {1, 2, 4, 8}) CHECK(degree(2 * k, 9) * 2 == degree(4 * k, 9));
    CHECK(power_radius(2, 2, 2) == doctest::Approx(16));
    CHECK(escape_radius_log2(1, 529) == doctest::Approx(92));
    CHECK(escape_radius(1, 529) == doctest::Approx(std::pow(4.0, 46)));
    CHECK(std::isinf(escape_radius(6, 1089)) == (escape_radius_log2(6, 1089) > 1023));

    const std::int64_t N = 529;
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int t = 0; t < 200; ++t) {
        const Cylindrical c{1 + std::abs(u(rng)), u(rng), u(rng)};
        Cylindrical c2 = c;
        c2.theta += std::numbers::pi / static_cast<double>(N);
        CHECK(distance(winding_map(c, N), winding_map(c2, N)) < 1e-9);
        CHECK(norm(winding_map(c, N)) == doctest::Approx(std::hypot(c.r, c.z)));
    }
    const auto w = winding_map(Cylindrical{2, 0.001, 0.5}, 10);
    CHECK(w.x == doctest::Approx(2 * std::cos(0.02)));
    CHECK(w.y == doctest::Approx(2 * std::sin(0.02)));
}

TEST_CASE("Zorich linear part and conjugation") {
    const auto A = zorich_linear_part();
    CHECK(A.apply(ExactPoint3{Q(1), Q(0), Q(0)}) == ExactPoint3{Q(1), Q(1), Q(0)});
    CHECK(A.apply(ExactPoint3{Q(0), Q(1), Q(0)}) == ExactPoint3{Q(-1), Q(1), Q(0)});
    CHECK(A.apply(ExactPoint3{Q(0), Q(0), Q(1)}) == ExactPoint3{Q(0), Q(0), QSqrt2::sqrt2()});
    CHECK(is_valid_similarity(A));
    Mat3<QSqrt2> lin;
    for (int i = 0; i < 9; ++i) lin[i] = A.scale * A.rotation[i];
    CHECK(determinant(lin) == QSqrt2::sqrt2() * Q(2));
    CHECK(A.scale == QSqrt2::sqrt2());
    const auto cert = check_conjugation(200);
    CHECK(cert.status == Status::Pass);
    CHECK(cert.stat_value("failures") == 0);
}
