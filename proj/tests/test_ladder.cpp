#include "doctest.h"
#include "oracles.hpp"
#include "wildcantor/ladder.hpp"
#include "wildcantor/mesh.hpp"

#include <cmath>

using namespace wildcantor;

namespace {

QSqrt2 Q(long n, long d = 1) { return QSqrt2::rational(n, d); }

double vertex_diameter(const std::vector<PolyLoopD>& loops) {
    double best = 0;
    for (const auto& A : loops)
        for (const auto& B : loops)
            for (const auto& p : A.vertices())
                for (const auto& q : B.vertices()) best = std::max(best, distance(p, q));
    return best;
}

}  // namespace

TEST_CASE("ladder loops") {
    auto L1 = build_ladder(1, 9);
    REQUIRE(L1.loops.size() == 1);
    CHECK(L1.loops[0].vertices() ==
          std::vector<ExactPoint3>{{Q(0), Q(1), Q(0)}, {Q(1), Q(1), Q(0)}, {Q(1), Q(0), Q(0)}, {Q(0), Q(0), Q(0)}});
    auto L6 = build_ladder(6, 9);
    const std::vector<int> widths{1, 3, 1, 1, 3, 1};
    for (int i = 0; i < 6; ++i)
        CHECK((L6.loops[i][1].x - L6.loops[i][0].x) == Q(widths[i]));
    CHECK(L6.loops[5][1].x == Q(10));
    auto L2 = build_ladder(2, 9);
    CHECK(L2.loops[0][1] == L2.loops[1][0]);  // shared edge {1} x [0,1]
    CHECK(L2.loops[0][2] == L2.loops[1][3]);
    CHECK(build_ladder(1).N() == 529);
    CHECK_THROWS_AS(build_ladder(1, 3), std::invalid_argument);
}

TEST_CASE("anchor points") {
    const auto L = build_ladder(1, 9);
    const auto an = anchor_points(L, 1);
    REQUIRE(an.size() == 36);
    CHECK(an[0].point == ExactPoint3(Q(1, 18), Q(1), Q(0)));
    int per_side[4] = {0, 0, 0, 0};
    for (const auto& a : an) {
        ++per_side[static_cast<int>(a.side)];
        const bool corner = (a.point.x == Q(0) || a.point.x == Q(1)) && (a.point.y == Q(0) || a.point.y == Q(1));
        CHECK_FALSE(corner);
    }
    for (int s : per_side) CHECK(s == 9);
    CHECK_THROWS_AS(anchor_points(L, 2), std::out_of_range);
}

TEST_CASE("anchor spacing is 1/N along edges and around corners") {
    for (int g : {1, 2, 3, 6}) {
        const auto L = build_ladder(g, 9);
        for (int i = 1; i <= g; ++i) {
            const auto an = anchor_points(L, i);
            CHECK(an.size() == static_cast<std::size_t>(2 * (L.seq.c[i - 1] + 1) * 9));
            for (std::size_t k = 0; k < an.size(); ++k) {
                const auto& p = an[k].point;
                const auto& q = an[(k + 1) % an.size()].point;
                const QSqrt2 dx = q.x - p.x, dy = q.y - p.y;
                auto absq = [](const QSqrt2& v) { return v.sign() < 0 ? -v : v; };
                // Arc length along an axis-aligned boundary: |dx| + |dy|.
                CHECK(absq(dx) + absq(dy) == Q(1, 9));
            }
        }
    }
}

TEST_CASE("copy count m = 2 (C_g + g) N for g <= 8") {
    for (int g = 1; g <= 8; ++g) {
        const auto L = build_ladder(g, 5);
        const auto S = build_scaffold(L);
        CHECK(S.segments.size() == static_cast<std::size_t>(2 * (L.width() + g) * 5));
    }
}

TEST_CASE("scaffold under the printed rule") {
    const auto L = build_ladder(1, 9);
    const auto S = build_scaffold(L, SlopeRule::Printed);
    CHECK(S.segments[0].slope == SlopeTag::Perpendicular);
    CHECK(S.segments[0].segment.p.x == S.segments[0].segment.q.x);  // vertical in the plane
    CHECK(S.segments[1].slope == SlopeTag::MinusOne);
    int perp = 0;
    for (const auto& s : S.segments) perp += s.slope == SlopeTag::Perpendicular;
    CHECK(perp == 4);
}

TEST_CASE("scaffold under the alternating rule") {
    for (int g : {1, 2, 3}) {
        const auto L = build_ladder(g, 9);
        const auto S = build_scaffold(L);
        for (const auto& s : S.segments) {
            CHECK(s.slope != SlopeTag::Perpendicular);
            const auto d = s.segment.q - s.segment.p;
            CHECK(dot(d, d) == Q(128, 25 * 81));  // |sigma| = 8 sqrt2 / (5N)
            CHECK((s.segment.p + s.segment.q) == QSqrt2(2) * s.anchor.point);
        }
        const auto& a = S.segments[0].segment;
        const auto& b = S.segments[1].segment;
        CHECK(segment_intersect(a, b));
    }
}

TEST_CASE("copy maps are exact similarities placed on the scaffold") {
    for (int g : {1, 2, 3}) {
        const auto L = build_ladder(g, 9);
        const auto S = build_scaffold(L);
        const auto copies = build_copies(L, S);
        REQUIRE(copies.size() == S.segments.size());
        const double dgamma = vertex_diameter(L.loops_d);
        for (std::size_t t = 0; t < copies.size(); ++t) {
            const auto& c = copies[t];
            const auto& s = S.segments[t];
            CHECK(c.map.scale == L.alpha());
            CHECK(is_valid_similarity(c.map));
            CHECK(determinant(c.map.rotation) == QSqrt2(1));
            // Vertices project onto sigma's span.
            const auto d = s.segment.q - s.segment.p;
            for (const auto& loop : c.loops)
                for (const auto& v : loop.vertices()) {
                    const ExactPoint3 w(v.x - s.segment.p.x, v.y - s.segment.p.y, QSqrt2(0));
                    CHECK((w.x * d.y - w.y * d.x).sign() == 0);
                    const QSqrt2 t01 = dot(w, d) / dot(d, d);
                    CHECK(t01.sign() >= 0);
                    CHECK((t01 - QSqrt2(1)).sign() <= 0);
                }
            // Left edge of gamma maps to the horizontal top edge of tau.
            const auto top0 = c.map.apply(L.loops[0][0]);
            const auto top1 = c.map.apply(L.loops[0][3]);
            CHECK(top0.z == top1.z);
            for (const auto& loop : c.loops)
                for (const auto& v : loop.vertices()) CHECK(v.z <= top0.z);
            const auto zr = copy_z_interval(9, L.width(), s.odd_class);
            CHECK(top0.z == zr.second);
            CHECK(vertex_diameter(c.loops_d) == doctest::Approx(L.alpha_d() * dgamma).epsilon(1e-12));
        }
    }
}

TEST_CASE("consecutive copies link, g=1, N=9") {
    const auto L = build_ladder(1, 9);
    const auto copies = build_copies(L, build_scaffold(L));
    const auto r = linking_number_checked(copies[0].loops[0], copies[1].loops[0]);
    CHECK(std::abs(r.value) == 1);
    CHECK(oracle::quadrature_linking(copies[0].loops_d[0], copies[1].loops_d[0], 12) ==
          doctest::Approx(r.value).epsilon(1e-3));
    CHECK(linking_number(copies[0].loops[0], copies[2].loops[0]) == 0);
}

TEST_CASE("torus and sub-tori") {
    const auto L = build_ladder(1);
    const auto T = build_torus(L);
    CHECK(T.distance({0.5, 1 + 1.0 / 24, 0}) == doctest::Approx(1.0 / 24).epsilon(1e-14));
    CHECK(T.contains({0.5, 1 + 1.0 / 24 - 1e-12, 0}));
    CHECK_FALSE(T.contains({0.5, 0.5, 0}));
    const auto L9 = build_ladder(1, 9);
    const auto subs = sub_tori(L9, build_copies(L9, build_scaffold(L9)));
    CHECK(subs.size() == 36);
    for (const auto& s : subs) CHECK(s.radius == doctest::Approx(std::sqrt(2.0) / 135));
    CHECK(sub_torus_radius(9) == doctest::Approx(L9.alpha_d() / 24).epsilon(1e-15));
}

TEST_CASE("tube meshes are closed, oriented and of the right genus") {
    for (int g : {1, 2, 3, 6}) {
        const auto L = build_ladder(g, 9);
        const auto T = build_torus(L);
        const auto m = mesh_tube(T, 8);
        CHECK(m.is_closed_oriented());
        CHECK(m.euler_characteristic() == 2 - 2 * g);
        CHECK(m.signed_volume() > 0);
        for (const auto& v : m.vertices) CHECK(std::abs(T.distance(v) - T.radius) <= 1e-9);
    }
    const auto L = build_ladder(1, 9);
    CHECK_THROWS(mesh_tube(build_torus(L), 7));
    CHECK_THROWS(mesh_tube(TubeNeighborhood(L.loops_d, 0.6), 8));
    CHECK_THROWS(mesh_tube(TubeNeighborhood(L.loops_d, 0.1, Metric::Euclidean), 8));
}

TEST_CASE("tube meshes are watertight at every resolution") {
    for (int g : {1, 2, 3})
        for (int res = 8; res <= 13; ++res) {
            const auto m = mesh_tube(build_torus(build_ladder(g, 9)), res);
            CHECK(m.is_closed_oriented());
            CHECK(m.euler_characteristic() == 2 - 2 * g);
        }
}
