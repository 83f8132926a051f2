#include "doctest.h"
#include "wildcantor/ifs.hpp"

#include <cmath>

using namespace wildcantor;

namespace {

bool same(const SimilarityQ& a, const SimilarityQ& b) {
    return a.scale == b.scale && a.rotation == b.rotation && a.translation == b.translation;
}

// Fixed point of p -> sR p + t by Cramer's rule on (I - sR) p = t.
Point3 fixed_point_oracle(const SimilarityD& s) {
    std::array<double, 9> M{};
    for (int i = 0; i < 9; ++i) M[i] = (i % 4 == 0 ? 1.0 : 0.0) - s.scale * s.rotation[i];
    auto det = [](const std::array<double, 9>& m) {
        return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) + m[2] * (m[3] * m[7] - m[4] * m[6]);
    };
    const double D = det(M);
    const double t[3] = {s.translation.x, s.translation.y, s.translation.z};
    double out[3];
    for (int c = 0; c < 3; ++c) {
        auto Mc = M;
        for (int r = 0; r < 3; ++r) Mc[r * 3 + c] = t[r];
        out[c] = det(Mc) / D;
    }
    return {out[0], out[1], out[2]};
}

SatelliteConfig far_satellite(const IFS& ifs) {
    const Point3 centre{0.5 * ifs.construction.ladder.width(), 0.5, 0};
    SatelliteConfig cfg;
    cfg.u = {{5, 5, 5}};
    cfg.eps2 = 0.1;
    cfg.eps1 = 0.5;
    cfg.x = {-5, -5, -5};
    SimilarityD a0, a1;
    a0.scale = 0.01;
    a0.translation = cfg.x - 0.01 * centre;
    a1.scale = 0.01;
    a1.translation = cfg.u[0] - 0.01 * centre;
    cfg.A = {a0, a1};
    return cfg;
}

}  // namespace

TEST_CASE("phi of words") {
    const auto ifs = build_ifs(1, 9);
    CHECK(same(phi_of_word(ifs, {}), SimilarityQ::identity()));
    CHECK(same(phi_of_word(ifs, {3}), ifs.phi(3)));
    const auto a = ifs.alpha();
    CHECK(phi_of_word(ifs, {1, 7, 30}).scale == a * a * a);
    CHECK_THROWS_AS(phi_of_word(ifs, {37}), std::out_of_range);
    CHECK_THROWS_AS(phi_of_word(ifs, {0}), std::out_of_range);
    // Left-to-right composition and self-similarity.
    CHECK(same(phi_of_word(ifs, {4, 9, 2}), ifs.phi(4).compose(phi_of_word(ifs, {9, 2}))));
    CHECK(same(phi_of_word(ifs, {4, 9, 2}), phi_of_word(ifs, {4, 9}).compose(ifs.phi(2))));
}

TEST_CASE("contraction ratio below one") {
    for (std::int64_t N : {4, 5, 9, 529}) CHECK(build_ladder(1, N).alpha() < QSqrt2(1));
}

TEST_CASE("level streams") {
    const auto ifs = build_ifs(1, 9);
    LevelStream s0(ifs, 0);
    auto c0 = s0.next();
    REQUIRE(c0);
    CHECK(c0->word.empty());
    CHECK_FALSE(s0.next());

    LevelStream s1(ifs, 1);
    CHECK(s1.size() == 36);
    std::size_t n = 0;
    while (auto c = s1.next()) {
        ++n;
        CHECK(c->word == Word{static_cast<int>(n)});
    }
    CHECK(n == 36);

    LevelStream s2(ifs, 2, {1});
    std::size_t k = 0;
    while (auto c = s2.next()) {
        ++k;
        CHECK(c->word.size() == 2);
        CHECK(kappa(c->word) == Word{1});
        CHECK(c->map.scale == ifs.alpha() * ifs.alpha());
        CHECK(same(c->map, phi_of_word(ifs, c->word)));
    }
    CHECK(k == 36);
    CHECK_THROWS_AS(LevelStream(ifs, 2, {}, 1000), LevelCapExceeded);
    CHECK_THROWS_AS(LevelStream(ifs, 9, {}, 1000000), LevelCapExceeded);
    CHECK_THROWS_AS(LevelStream(ifs, 1, {1, 2}), std::invalid_argument);

    const auto big = build_ifs(1, 529);
    CHECK(LevelStream(big, 1).size() == 2116);
}

TEST_CASE("level three under a prefix walks the word tree in order") {
    const auto ifs = build_ifs(1, 5);
    LevelStream s(ifs, 3, {2}, 1000);
    Word prev;
    std::size_t n = 0;
    while (auto c = s.next()) {
        if (!prev.empty()) CHECK(prev < c->word);
        CHECK(same(c->map, phi_of_word(ifs, c->word)));
        prev = c->word;
        ++n;
    }
    CHECK(n == 400);
}

TEST_CASE("components contain their children") {
    const auto ifs = build_ifs(1, 121);
    LevelStream s(ifs, 2, {5});
    const auto parent = LevelStream(ifs, 1, {5}).next();
    REQUIRE(parent);
    while (auto c = s.next())
        for (const auto& loop : c->core(ifs.torus))
            for (const auto& p : loop.vertices()) CHECK(parent->contains(ifs.torus, p));
}

TEST_CASE("points from addresses") {
    const auto ifs = build_ifs(1, 9);
    const Point3 anchor{0, 0.5, 0};
    const Point3 fix = fixed_point_oracle(to_double(ifs.phi(1)));
    const double a = ifs.alpha().to_double();
    for (std::size_t n = 1; n <= 8; ++n) {
        const auto ap = point_from_address(ifs, Word(n, 1), anchor);
        CHECK(ap.error == doctest::Approx(std::pow(a, static_cast<double>(n)) * ifs.diameter()));
        CHECK(distance(ap.point, fix) <= ap.error);
    }
    // The bound halves after log 2 / log(1/alpha) more letters.
    const double e1 = point_from_address(ifs, Word(3, 1), anchor).error;
    const double e2 = point_from_address(ifs, Word(4, 1), anchor).error;
    CHECK(std::log(e1 / e2) == doctest::Approx(std::log(1 / a)));
    CHECK_THROWS_AS(point_from_address(ifs, Word{}, anchor), std::invalid_argument);
}

TEST_CASE("addresses with different first letters land in separated tubes") {
    const auto ifs = build_ifs(1, 121);
    VerifyOptions o;
    o.sample_step = 1e-3;
    REQUIRE(certify_nesting(ifs.construction, o).status == Status::Pass);
    const Point3 anchor{0, 0.5, 0};
    const auto p = point_from_address(ifs, Address{{1}, {3}}, 6, anchor);
    const auto q = point_from_address(ifs, Address{{2}, {3}}, 6, anchor);
    CHECK(distance(p.point, q.point) > p.error + q.error);
}

TEST_CASE("shift dynamics") {
    const Address a{{1, 2}, {3, 4}};
    CHECK(shift(a) == Address{{2}, {3, 4}});
    CHECK(shift(shift(a)) == Address{{}, {3, 4}});
    CHECK(shift(shift(shift(a))) == Address{{}, {4, 3}});
    CHECK(a.head(6) == Word{1, 2, 3, 4, 3, 4});

    const auto ifs = build_ifs(1, 9);
    const Point3 anchor{0.25, 1, 0};
    const Address w{{5, 17, 2}, {9, 30}};
    const std::size_t depth = 6;
    for (int j : {1, 8, 36}) {
        Address jw = w;
        jw.prefix.insert(jw.prefix.begin(), j);
        const Point3 lhs = shift_point(ifs, j, point_from_address(ifs, jw, depth + 1, anchor).point);
        const Point3 rhs = point_from_address(ifs, w, depth, anchor).point;
        CHECK(distance(lhs, rhs) <= 1e-10);
        CHECK(shift(jw) == w);
    }
    const Point3 fix = fixed_point_oracle(to_double(ifs.phi(7)));
    CHECK(distance(shift_point(ifs, 7, fix), fix) <= 1e-12);
}

TEST_CASE("satellite extension") {
    const auto ifs = build_ifs(1, 9);
    const auto sat = build_satellite_ifs(ifs, far_satellite(ifs));
    CHECK(sat.xi.size() == ifs.m() + 1);
    CHECK(sat.min_separation > 0);
    const int m = static_cast<int>(ifs.m());
    CHECK(sat.label(Address{{}, {m + 1}}) == 0);
    CHECK(sat.label(Address{{}, {1}}) == 1);
    CHECK(sat.label(Address{{m + 1, m + 1}, {1, 2}}) == 1);
    CHECK(sat.label(Address{{}, {1, m + 1}}) == 0);
    const auto lvl = sat.alternate_level1();
    REQUIRE(lvl.size() == ifs.m() + 1);
    CHECK(lvl.back().kind == ComponentKind::Ball);
    // The satellite fixed point sits inside its ball.
    const Point3 y = sat.point(Address{{}, {m + 1}}, 12, {0, 0, 0});
    CHECK(lvl.back().contains(ifs.torus, y));
    CHECK(distance(y, Point3{5, 5, 5}) < 0.1);
}

TEST_CASE("satellite configurations are validated") {
    const auto ifs = build_ifs(1, 9);
    auto cfg = far_satellite(ifs);
    cfg.eps1 = 0.15;
    CHECK_THROWS_AS(build_satellite_ifs(ifs, cfg), SatelliteConfigError);

    cfg = far_satellite(ifs);
    cfg.u.push_back({5, 5, 5.1});
    SimilarityD a2 = cfg.A[1];
    a2.translation = a2.translation + Point3{0, 0, 0.1};
    cfg.A.push_back(a2);
    try {
        build_satellite_ifs(ifs, cfg);
        FAIL("overlapping balls accepted");
    } catch (const SatelliteConfigError& e) {
        CHECK(e.first == "xi_37");
        CHECK(e.second == "xi_38");
        CHECK(e.separation < 0);
    }

    // A ball centred on the core of a torus image meets that image.
    cfg = far_satellite(ifs);
    const Point3 on_core = ifs.construction.copies[4].loops_d[0].vertices()[1];
    cfg.u = {on_core};
    cfg.A[1].scale = 0.001;
    cfg.A[1].translation = on_core - 0.001 * Point3{0.5, 0.5, 0};
    cfg.eps2 = 0.01;
    try {
        build_satellite_ifs(ifs, cfg);
        FAIL("ball on a torus image accepted");
    } catch (const SatelliteConfigError& e) {
        CHECK(e.first == "xi_37");
        CHECK(e.second == "xi_5");
    }
}
