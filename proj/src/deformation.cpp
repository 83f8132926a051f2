#include "wildcantor/deformation.hpp"

#include "wildcantor/parallel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace wildcantor {

namespace {

constexpr double kQuarterTurn = std::numbers::pi / 4;

Point3 rotate_about_vertical(const Point3& p, const Point3& centre, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    const double dx = p.x - centre.x, dy = p.y - centre.y;
    return {centre.x + c * dx - s * dy, centre.y + s * dx + c * dy, p.z};
}

// Crossing of the planar lines through a1, a2 and b1, b2.
Point3 planar_crossing(const Point3& a1, const Point3& a2, const Point3& b1, const Point3& b2) {
    const double dx1 = a2.x - a1.x, dy1 = a2.y - a1.y, dx2 = b2.x - b1.x, dy2 = b2.y - b1.y;
    const double den = dx1 * dy2 - dy1 * dx2;
    if (std::abs(den) < 1e-300) throw std::runtime_error("planar_crossing: parallel lines");
    const double u = ((b1.x - a1.x) * dy2 - (b1.y - a1.y) * dx2) / den;
    return {a1.x + u * dx1, a1.y + u * dy1, 0};
}

}  // namespace

std::array<double, 2> ellipse_to_circle(double r, double a, double theta, double t) {
    return {(r + r * a * t - r * t) * std::cos(theta), a * r * std::sin(theta)};
}

double deformation_shift(std::int64_t N) {
    if (N < 1) throw std::invalid_argument("deformation_shift: N must be positive");
    return (13 * std::numbers::sqrt2 - 10) / (20.0 * static_cast<double>(N));
}

Point3 Deformation::s4_point(double theta, double s) const {
    const double w = r * std::cos(theta), z = r * std::sin(theta);
    if (s <= 0.5) {
        // Top leg offset line y = 1 + w from x = C + 1/2 to the offset corner.
        return {C + 0.5 + 2 * s * (0.5 + w), 1 + w, z};
    }
    return {C + 1 + w, 1 + w - (2 * s - 1) * (0.5 + w), z};
}

Point3 Deformation::curve_point(int curve, double theta) const { return s4_point(theta, 0.5 * (curve - 1)); }

Point3 Deformation::stage_map(int which, double tau, DeformPiece piece, const Point3& p, int curve) const {
    const bool on1 = curve == 1 || (curve == 0 && piece == DeformPiece::S1);
    const bool on2 = curve == 0 && piece == DeformPiece::S2;
    const bool on3 = curve == 3 || (curve == 0 && piece == DeformPiece::S3);
    const bool onC2 = curve == 2;
    switch (which) {
        case 1:
            if (on1 || onC2) return p;
            if (on2) return {p.x, p.y - l * tau, p.z};
            if (on3) return {p.x, p.y - 2 * l * tau, p.z};
            break;
        case 2:
            if (on1) return p;
            if (on2 || on3) return rotate_about_vertical(p, w0, tau * kQuarterTurn);
            if (onC2) {
                // Ellipse in the miter plane through w2 with semi-axes sqrt(2) r
                // (outward bisector) and r (vertical), straightened to radius r.
                const double R = std::numbers::sqrt2 * r, a = 1 / std::numbers::sqrt2;
                const double b = ((p.x - w2.x) + (p.y - w2.y)) / std::numbers::sqrt2;
                const double theta = std::atan2((p.z - w2.z) / (a * R), b / R);
                const double rho = std::hypot(b / R, (p.z - w2.z) / (a * R));
                const auto e = ellipse_to_circle(R * rho, a, theta, tau);
                const Point3 q{w2.x + e[0] / std::numbers::sqrt2, w2.y + e[0] / std::numbers::sqrt2, w2.z + e[1]};
                return rotate_about_vertical(q, w0, tau * kQuarterTurn);
            }
            break;
        case 3: {
            if (on1 || on2) return p;
            if (on3) return rotate_about_vertical(p, v0, tau * kQuarterTurn);
            if (onC2) {
                const Point3 centre = rotate_about_vertical(w2, w0, kQuarterTurn);
                const Point3 moved = rotate_about_vertical(centre, v0, tau * kQuarterTurn);
                return p + (moved - centre);
            }
            break;
        }
        default:
            break;
    }
    throw std::invalid_argument("Deformation: bad stage or piece");
}

Point3 Deformation::s4_stage(int which, double tau, const DeformSample& q) const {
    // Stages before `which` at full time, then stage `which` at tau.
    Point3 cur = q.p;
    std::array<Point3, 3> curves{curve_point(1, q.theta), curve_point(2, q.theta), curve_point(3, q.theta)};
    for (int st = 1; st <= which; ++st) {
        const double time = st == which ? tau : 1.0;
        std::array<Point3, 3> disp;
        for (int c = 0; c < 3; ++c) {
            const Point3 moved = stage_map(st, time, DeformPiece::S4, curves[c], c + 1);
            disp[c] = moved - curves[c];
            curves[c] = moved;
        }
        const Point3 d = q.s <= 0.5 ? (1 - 2 * q.s) * disp[0] + (2 * q.s) * disp[1]
                                    : (2 - 2 * q.s) * disp[1] + (2 * q.s - 1) * disp[2];
        cur = cur + d;
    }
    return cur;
}

Point3 Deformation::before_stage(int which, const DeformSample& q) const {
    if (q.piece == DeformPiece::S4) return which == 1 ? q.p : s4_stage(which - 1, 1.0, q);
    Point3 cur = q.p;
    for (int st = 1; st < which; ++st) cur = stage_map(st, 1.0, q.piece, cur, 0);
    return cur;
}

Point3 Deformation::stage(int which, double tau, const DeformSample& q) const {
    if (which < 1 || which > 3) throw std::invalid_argument("Deformation::stage: stage must be 1, 2 or 3");
    if (!(tau >= 0 && tau <= 1)) throw std::invalid_argument("Deformation::stage: time outside [0,1]");
    if (q.piece == DeformPiece::S4) return s4_stage(which, tau, q);
    return stage_map(which, tau, q.piece, before_stage(which, q), 0);
}

Point3 Deformation::eval(const DeformSample& q, double t) const {
    if (!(t >= 0 && t <= 1)) throw std::invalid_argument("Deformation::eval: t outside [0,1]");
    if (t <= 1.0 / 3) return stage(1, std::min(1.0, 3 * t), q);
    if (t <= 2.0 / 3) return stage(2, std::clamp(3 * t - 1, 0.0, 1.0), q);
    return stage(3, std::clamp(3 * t - 2, 0.0, 1.0), q);
}

Deformation build_deformation(int k, std::int64_t N) {
    if (k < 1) throw std::invalid_argument("build_deformation: k must be positive");
    if (N == 0) N = min_scaffold_density(2 * k + 1);
    Deformation d;
    d.k = k;
    d.construction = construct(k + 1, N);
    const auto& c = d.construction;
    d.C = c.ladder.seq.C[static_cast<std::size_t>(k)];
    if (c.ladder.seq.c.back() != 1) throw std::logic_error("build_deformation: last loop must have width one");
    d.r = kTorusRadius;
    d.l = deformation_shift(N);
    d.w1 = {d.C + 0.5, 1, 0};
    d.w2 = {d.C + 1, 1, 0};
    d.w3 = {d.C + 1, 0.5, 0};

    const int i = k + 1;
    const auto n = static_cast<int>(N);
    for (int j = (n + 1) / 2; j <= n; ++j) d.s1_copies.push_back(c.scaffold.index(i, j));
    d.s2_copy = c.scaffold.index(i, n + 1);
    for (int j = n + 2; j <= n + (n + 1) / 2; ++j) d.s3_copies.push_back(c.scaffold.index(i, j));

    auto seg = [&](int j) {
        const auto& s = c.scaffold.segments[c.scaffold.index(i, j)].segment;
        return std::array<Point3, 2>{to_double(s.p), to_double(s.q)};
    };
    const auto sN = seg(n), sN1 = seg(n + 1), sN2 = seg(n + 2);
    const Point3 dl{0, d.l, 0};
    d.w0 = planar_crossing(sN[0], sN[1], sN1[0] - dl, sN1[1] - dl);
    auto r1 = [&](const Point3& p) { return rotate_about_vertical(p, d.w0, kQuarterTurn); };
    d.v0 = planar_crossing(r1(sN1[0] - dl), r1(sN1[1] - dl), r1(sN2[0] - 2 * dl), r1(sN2[1] - 2 * dl));
    return d;
}

DeformationSurface deformation_surface(const Deformation& d, int resolution) {
    if (resolution < 2) throw std::invalid_argument("deformation_surface: resolution must be at least 2");
    DeformationSurface out;
    auto& V = out.mesh.vertices;
    auto& F = out.mesh.faces;
    auto add = [&](const DeformSample& q) {
        out.samples.push_back(q);
        V.push_back(q.p);
        return static_cast<int>(V.size() - 1);
    };

    const int na = 4 * resolution, ns = 2 * resolution;
    std::vector<std::vector<int>> grid(static_cast<std::size_t>(ns + 1), std::vector<int>(static_cast<std::size_t>(na)));
    for (int b = 0; b <= ns; ++b)
        for (int a = 0; a < na; ++a) {
            const double theta = 2 * std::numbers::pi * a / na, s = static_cast<double>(b) / ns;
            grid[b][a] = add({DeformPiece::S4, d.s4_point(theta, s), theta, s});
        }
    for (int b = 0; b < ns; ++b)
        for (int a = 0; a < na; ++a) {
            const int a1 = (a + 1) % na;
            F.push_back({grid[b][a], grid[b + 1][a], grid[b + 1][a1]});
            F.push_back({grid[b][a], grid[b + 1][a1], grid[b][a1]});
        }

    // End disks D1 (x = C + 1/2, part of S1) and D3 (y = 1/2, part of S3).
    for (int end = 0; end < 2; ++end) {
        const DeformPiece piece = end == 0 ? DeformPiece::S1 : DeformPiece::S3;
        const Point3 centre = end == 0 ? d.w1 : d.w3;
        std::vector<int> prev(static_cast<std::size_t>(na), add({piece, centre, 0, 0}));
        for (int ring = 1; ring <= resolution; ++ring) {
            std::vector<int> cur(static_cast<std::size_t>(na));
            for (int a = 0; a < na; ++a) {
                if (ring == resolution) {
                    cur[a] = grid[end == 0 ? 0 : ns][a];
                    continue;
                }
                const double theta = 2 * std::numbers::pi * a / na, rho = d.r * ring / resolution;
                const double w = rho * std::cos(theta), z = rho * std::sin(theta);
                cur[a] = add({piece, end == 0 ? Point3{centre.x, centre.y + w, z} : Point3{centre.x + w, centre.y, z}, 0, 0});
            }
            for (int a = 0; a < na; ++a) {
                const int a1 = (a + 1) % na;
                if (ring == 1) {
                    F.push_back(end == 0 ? std::array<int, 3>{prev[0], cur[a1], cur[a]} : std::array<int, 3>{prev[0], cur[a], cur[a1]});
                } else if (end == 0) {
                    F.push_back({prev[a], cur[a1], cur[a]});
                    F.push_back({prev[a], prev[a1], cur[a1]});
                } else {
                    F.push_back({prev[a], cur[a], cur[a1]});
                    F.push_back({prev[a], cur[a1], prev[a1]});
                }
            }
            prev = cur;
        }
    }

    // Sub-tori as similarity images of a coarse torus mesh.
    const TriMesh base = mesh_tube(build_torus(d.construction.ladder), 4, 4.0);
    auto add_copy = [&](std::size_t t, DeformPiece piece) {
        const TriMesh m = transform(to_double(d.construction.copies[t].map), base);
        const int offset = static_cast<int>(V.size());
        for (const auto& p : m.vertices) add({piece, p, 0, 0});
        for (const auto& f : m.faces) F.push_back({f[0] + offset, f[1] + offset, f[2] + offset});
    };
    for (auto t : d.s1_copies) add_copy(t, DeformPiece::S1);
    add_copy(d.s2_copy, DeformPiece::S2);
    for (auto t : d.s3_copies) add_copy(t, DeformPiece::S3);
    return out;
}

TriMesh deformation_snapshot(const Deformation& d, const DeformationSurface& s, double t) {
    TriMesh m = s.mesh;
    for (std::size_t v = 0; v < m.vertices.size(); ++v) m.vertices[v] = d.eval(s.samples[v], t);
    return m;
}

BiLipschitzEstimate estimate_bilipschitz(const std::vector<Point3>& before, const std::vector<Point3>& after,
                                         std::size_t pair_budget, std::uint64_t seed, int jobs) {
    if (before.size() != after.size()) throw std::invalid_argument("estimate_bilipschitz: size mismatch");
    const std::size_t n = before.size();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a + 1 < n && pairs.size() < pair_budget / 2; ++a) pairs.emplace_back(a, a + 1);
    std::mt19937_64 rng(seed);
    while (n > 1 && pairs.size() < pair_budget) {
        const std::size_t a = rng() % n, b = rng() % n;
        if (a != b) pairs.emplace_back(a, b);
    }
    struct Acc {
        double lo = std::numeric_limits<double>::infinity(), hi = 0;
        std::size_t used = 0;
    };
    const auto parts = parallel_chunks<Acc>(pairs.size(), jobs, [&](std::size_t b, std::size_t e, std::size_t) {
        Acc acc;
        for (std::size_t k = b; k < e; ++k) {
            const auto [x, y] = pairs[k];
            const double d0 = distance(before[x], before[y]);
            if (d0 < 1e-14) continue;
            const double ratio = distance(after[x], after[y]) / d0;
            acc.lo = std::min(acc.lo, ratio), acc.hi = std::max(acc.hi, ratio), ++acc.used;
        }
        return acc;
    });
    BiLipschitzEstimate est{std::numeric_limits<double>::infinity(), 0, 0};
    for (const auto& p : parts) est.lower = std::min(est.lower, p.lo), est.upper = std::max(est.upper, p.hi), est.pairs += p.used;
    if (est.pairs == 0) est.lower = est.upper = 1;
    return est;
}

}  // namespace wildcantor
