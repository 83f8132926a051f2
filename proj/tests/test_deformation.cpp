#include "doctest.h"
#include "wildcantor/deformation.hpp"

#include <cmath>
#include <numbers>

using namespace wildcantor;

namespace {

std::vector<Point3> evaluate(const Deformation& d, const DeformationSurface& s, double t) {
    std::vector<Point3> out;
    for (const auto& q : s.samples) out.push_back(d.eval(q, t));
    return out;
}

}  // namespace

TEST_CASE("ellipse to circle formula") {
    const auto p = ellipse_to_circle(1, 0.5, 0, 1);
    CHECK(p[0] == doctest::Approx(0.5));
    CHECK(p[1] == doctest::Approx(0));
    const auto q = ellipse_to_circle(2, 0.25, 0.7, 0);
    CHECK(q[0] == doctest::Approx(2 * std::cos(0.7)));
    CHECK(q[1] == doctest::Approx(0.5 * std::sin(0.7)));
    for (double th = 0; th < 6.3; th += 0.3) {
        const auto c = ellipse_to_circle(3, 0.4, th, 1);
        CHECK(std::hypot(c[0], c[1]) == doctest::Approx(1.2));
    }
}

TEST_CASE("deformation shift") {
    CHECK(deformation_shift(25) == doctest::Approx((13 * std::sqrt(2.0) - 10) / 500));
    CHECK_THROWS_AS(deformation_shift(0), std::invalid_argument);
}

TEST_CASE("the bent tube piece lies on the tube boundary") {
    const auto d = build_deformation(1, 25);
    const Segment3 top{{d.w1.x - 0.5, 1, 0}, d.w2}, right{d.w2, {d.w2.x, 0, 0}};
    for (double s = 0; s <= 1.0001; s += 0.05)
        for (double th = 0; th < 6.28; th += 0.2) {
            const Point3 p = d.s4_point(th, s);
            const double dist = std::min(delta_point_to_segment(p, top), delta_point_to_segment(p, right));
            CHECK(dist == doctest::Approx(d.r).epsilon(1e-12));
        }
    // C2 is the ellipse with semi-axes sqrt(2) r and r in the miter plane.
    const Point3 c0 = d.s4_point(0, 0.5) - d.w2;
    CHECK(norm(c0) == doctest::Approx(std::sqrt(2.0) * d.r));
    CHECK(c0.x == doctest::Approx(c0.y));
}

TEST_CASE("deformation stages") {
    const auto d = build_deformation(1, 25);
    const auto surf = deformation_surface(d, 4);
    REQUIRE(surf.samples.size() == surf.mesh.vertices.size());
    for (const auto& q : surf.samples) CHECK(distance(d.eval(q, 0), q.p) == 0);

    // Stage one moves S3 by 2l and S2 by l in the -y direction.
    for (const auto& q : surf.samples) {
        const Point3 moved = d.stage(1, 1.0, q) - q.p;
        if (q.piece == DeformPiece::S3) {
            CHECK(moved.y == doctest::Approx(-2 * d.l));
            CHECK(moved.x == doctest::Approx(0));
        } else if (q.piece == DeformPiece::S2) {
            CHECK(moved.y == doctest::Approx(-d.l));
        } else if (q.piece == DeformPiece::S1) {
            CHECK(norm(moved) == 0);
        }
    }
    CHECK(2 * d.l == doctest::Approx((13 * std::sqrt(2.0) - 10) / 250));

    // Stage boundaries agree: the end of one stage is the start of the next.
    for (std::size_t v = 0; v < surf.samples.size(); v += 7) {
        const auto& q = surf.samples[v];
        CHECK(distance(d.stage(1, 1, q), d.stage(2, 0, q)) < 1e-12);
        CHECK(distance(d.stage(2, 1, q), d.stage(3, 0, q)) < 1e-12);
        CHECK(distance(d.eval(q, 1.0 / 3), d.stage(1, 1, q)) < 1e-12);
    }

    // After stage two, C2 is a circle of radius r about the rotated corner.
    const double h = std::sqrt(0.5);
    const Point3 off = d.w2 - d.w0;
    const Point3 centre{d.w0.x + h * (off.x - off.y), d.w0.y + h * (off.x + off.y), 0};
    for (double th = 0; th < 6.28; th += 0.4) {
        const DeformSample q{DeformPiece::S4, d.s4_point(th, 0.5), th, 0.5};
        CHECK(distance(d.stage(2, 1, q), centre) == doctest::Approx(d.r));
    }
    CHECK_THROWS_AS(d.eval(surf.samples[0], 1.5), std::invalid_argument);
    CHECK_THROWS_AS(d.eval(surf.samples[0], -0.1), std::invalid_argument);
}

TEST_CASE("deformation is continuous in t") {
    const auto d = build_deformation(1, 25);
    const auto surf = deformation_surface(d, 4);
    for (double t : {0.1, 0.5, 0.8}) {
        const auto at = evaluate(d, surf, t);
        double prev = 1e300;
        for (double h : {1e-2, 1e-3, 1e-4}) {
            const auto e = estimate_bilipschitz(at, evaluate(d, surf, t + h), 20000);
            const double distortion = std::max(e.upper, 1 / e.lower);
            CHECK(distortion <= prev + 1e-12);
            prev = distortion;
        }
        CHECK(prev < 1.01);
    }
}

TEST_CASE("bi-Lipschitz estimator") {
    std::vector<Point3> a, b;
    for (int k = 0; k < 50; ++k) {
        a.push_back({static_cast<double>(k), std::sin(k), 0});
        b.push_back(2.0 * a.back());
    }
    const auto e = estimate_bilipschitz(a, b, 1000);
    CHECK(e.lower == doctest::Approx(2));
    CHECK(e.upper == doctest::Approx(2));
    CHECK(e.pairs > 0);
    const auto e4 = estimate_bilipschitz(a, b, 1000, 20240611, 4);
    CHECK(e4.pairs == e.pairs);
}

TEST_CASE("snapshots keep the mesh connectivity") {
    const auto d = build_deformation(1, 9);
    const auto surf = deformation_surface(d, 3);
    const auto m = deformation_snapshot(d, surf, 0.75);
    CHECK(m.faces == surf.mesh.faces);
    CHECK(m.vertices.size() == surf.mesh.vertices.size());
}
