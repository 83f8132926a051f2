#include "wildcantor/ladder.hpp"

#include <cmath>
#include <stdexcept>

namespace wildcantor {

namespace {

QSqrt2 q(long v) { return QSqrt2(static_cast<int>(v)); }

ExactPoint3 xy(const QSqrt2& x, const QSqrt2& y) { return ExactPoint3(x, y, QSqrt2(0)); }

}  // namespace

QSqrt2 Ladder::alpha() const { return QSqrt2(0, mpq_class(8)) / q(5 * seq.N); }

double Ladder::torus_diameter() const {
    const double r = kTorusRadius;
    const double C = width();
    return std::sqrt((C + 2 * r) * (C + 2 * r) + (1 + 2 * r) * (1 + 2 * r));
}

Ladder build_ladder(int g, std::int64_t N) {
    if (g < 1) throw std::invalid_argument("build_ladder: g must be >= 1");
    if (N != 0 && N < 4) throw std::invalid_argument("build_ladder: N must be >= 4");
    Ladder L;
    L.g = g;
    L.seq = make_sequence(g, N);
    for (int i = 1; i <= g; ++i) {
        const QSqrt2 a = L.seq.C[static_cast<std::size_t>(i - 1)];
        const QSqrt2 b = L.seq.C[static_cast<std::size_t>(i)];
        L.loops.emplace_back(std::vector<ExactPoint3>{xy(a, 1), xy(b, 1), xy(b, 0), xy(a, 0)});
        L.loops_d.push_back(to_double(L.loops.back()));
    }
    return L;
}

std::vector<Anchor> anchor_points(const Ladder& L, int i) {
    if (i < 1 || i > L.g) throw std::out_of_range("anchor_points: loop index out of range");
    const std::int64_t N = L.N();
    const int c = L.seq.c[static_cast<std::size_t>(i - 1)];
    const QSqrt2 a = L.seq.C[static_cast<std::size_t>(i - 1)];
    const QSqrt2 b = L.seq.C[static_cast<std::size_t>(i)];
    std::vector<Anchor> out;
    out.reserve(static_cast<std::size_t>(2 * (c + 1) * N));
    int j = 0;
    auto off = [N](std::int64_t k) { return QSqrt2::rational(2 * k - 1, 2 * N); };
    for (std::int64_t k = 1; k <= c * N; ++k) out.push_back({i, ++j, EdgeSide::Top, int(k), xy(a + off(k), 1)});
    for (std::int64_t k = 1; k <= N; ++k) out.push_back({i, ++j, EdgeSide::Right, int(k), xy(b, QSqrt2(1) - off(k))});
    for (std::int64_t k = 1; k <= c * N; ++k) out.push_back({i, ++j, EdgeSide::Bottom, int(k), xy(b - off(k), 0)});
    for (std::int64_t k = 1; k <= N; ++k) out.push_back({i, ++j, EdgeSide::Left, int(k), xy(a, off(k))});
    return out;
}

std::vector<ExactPoint3> anchor_points(int g, std::int64_t N, int i) {
    std::vector<ExactPoint3> pts;
    for (const auto& an : anchor_points(build_ladder(g, N), i)) pts.push_back(an.point);
    return pts;
}

Scaffold build_scaffold(const Ladder& L, SlopeRule rule) {
    Scaffold S;
    S.rule = rule;
    S.loop_offset.assign(static_cast<std::size_t>(L.g) + 2, 0);
    const std::int64_t N = L.N();
    const QSqrt2 half = L.alpha() / QSqrt2(2);
    const QSqrt2 inv_r2 = QSqrt2(0, mpq_class(1, 2));  // 1/sqrt(2)
    for (int i = 1; i <= L.g; ++i) {
        S.loop_offset[static_cast<std::size_t>(i)] = S.segments.size();
        const std::int64_t c = L.seq.c[static_cast<std::size_t>(i - 1)];
        for (const Anchor& an : anchor_points(L, i)) {
            ScaffoldSegment s;
            s.anchor = an;
            s.odd_class = ((i - 1 + an.j) % 2) == 1;
            if (rule == SlopeRule::Alternating) {
                s.slope = s.odd_class ? SlopeTag::PlusOne : SlopeTag::MinusOne;
            } else {
                const std::int64_t j = an.j;
                if (j == 1 || j == c * N + 1 || j == (c + 1) * N + 1 || j == (2 * c + 1) * N)
                    s.slope = SlopeTag::Perpendicular;
                else
                    s.slope = j % 2 == 0 ? SlopeTag::MinusOne : SlopeTag::PlusOne;
            }
            switch (s.slope) {
                case SlopeTag::PlusOne: s.direction = ExactPoint3(inv_r2, inv_r2, 0); break;
                case SlopeTag::MinusOne: s.direction = ExactPoint3(inv_r2, -inv_r2, 0); break;
                case SlopeTag::Perpendicular:
                    if (an.side == EdgeSide::Top || an.side == EdgeSide::Bottom)
                        s.direction = ExactPoint3(0, 1, 0);
                    else
                        s.direction = ExactPoint3(1, 0, 0);
                    break;
            }
            s.segment = ExactSegment3(an.point - half * s.direction, an.point + half * s.direction);
            S.segments.push_back(std::move(s));
        }
    }
    S.loop_offset[static_cast<std::size_t>(L.g) + 1] = S.segments.size();
    return S;
}

std::pair<QSqrt2, QSqrt2> copy_z_interval(std::int64_t N, int C, bool odd_class) {
    const QSqrt2 s = QSqrt2(0, 1) / q(5 * N);
    const int shift = odd_class ? 0 : 2;
    return {s * q(-4L * C - 1 + shift), s * q(4L * C - 1 + shift)};
}

std::vector<LadderCopy> build_copies(const Ladder& host, const Scaffold& scaffold, const Ladder& copied) {
    if (host.N() != copied.N()) throw std::invalid_argument("build_copies: ladders must share N");
    const QSqrt2 alpha = host.alpha();
    std::vector<LadderCopy> out;
    out.reserve(scaffold.segments.size());
    for (const auto& s : scaffold.segments) {
        LadderCopy cp;
        cp.i = s.anchor.i;
        cp.j = s.anchor.j;
        const auto& u = s.direction;
        // Columns: e_x -> -e_z, e_y -> u, e_z -> (-e_z) x u = (u_y, -u_x, 0).
        cp.map.scale = alpha;
        cp.map.rotation = {QSqrt2(0), u.x, u.y, QSqrt2(0), u.y, -u.x, QSqrt2(-1), QSqrt2(0), QSqrt2(0)};
        const auto zr = copy_z_interval(host.N(), copied.width(), s.odd_class);
        cp.map.translation = ExactPoint3(s.segment.p.x, s.segment.p.y, zr.second);
        for (const auto& loop : copied.loops) {
            cp.loops.push_back(transform(cp.map, loop));
            cp.loops_d.push_back(to_double(cp.loops.back()));
        }
        out.push_back(std::move(cp));
    }
    return out;
}

std::vector<LadderCopy> build_copies(const Ladder& L, const Scaffold& scaffold) { return build_copies(L, scaffold, L); }

TubeNeighborhood build_torus(const Ladder& L) { return TubeNeighborhood(L.loops_d, kTorusRadius, Metric::Delta); }

double sub_torus_radius(std::int64_t N) { return std::sqrt(2.0) / (15.0 * static_cast<double>(N)); }

std::vector<TubeNeighborhood> sub_tori(const Ladder& L, const std::vector<LadderCopy>& copies) {
    std::vector<TubeNeighborhood> out;
    out.reserve(copies.size());
    for (const auto& c : copies) out.emplace_back(c.loops_d, sub_torus_radius(L.N()), Metric::Delta);
    return out;
}

}  // namespace wildcantor
