#pragma once

#include "wildcantor/geometry.hpp"
#include "wildcantor/sequences.hpp"

#include <vector>

namespace wildcantor {

/// The planar g-ladder: loops gamma_i = boundary of [C_{i-1}, C_i] x [0, 1].
struct Ladder {
    int g = 0;
    FoldingSequence seq;
    std::vector<PolyLoopQ> loops;    ///< exact, clockwise seen from +z, starting top-left
    std::vector<PolyLoopD> loops_d;  ///< same loops in double precision

    std::int64_t N() const { return seq.N; }
    int width() const { return seq.total_width(); }
    /// Scale of every copy map, 8 sqrt(2) / (5N).
    QSqrt2 alpha() const;
    double alpha_d() const { return alpha().to_double(); }
    /// Euclidean diameter of the solid torus of radius 1/24 about the ladder.
    double torus_diameter() const;
};

/// Throws std::invalid_argument for g < 1 or N < 4. N = 0 selects N_g.
Ladder build_ladder(int g, std::int64_t N = 0);

enum class EdgeSide { Top, Right, Bottom, Left };
enum class SlopeTag { Perpendicular, MinusOne, PlusOne };

/// How scaffold segments are tilted.
///  Alternating: slope +1 when (i - 1 + j) is odd, -1 otherwise.
///  Printed: perpendicular at j in {1, c N + 1, (c + 1) N + 1, (2c + 1) N},
///           otherwise -1 for even j and +1 for odd j.
enum class SlopeRule { Alternating, Printed };

struct Anchor {
    int i = 0;  ///< loop, 1-based
    int j = 0;  ///< position on the loop, 1-based, clockwise from top-left
    EdgeSide side = EdgeSide::Top;
    int k = 0;  ///< 1-based position along its edge
    ExactPoint3 point;
};

/// 2 (c_i + 1) N anchors on gamma_i at half-offset positions (k - 1/2) / N.
std::vector<Anchor> anchor_points(const Ladder& L, int i);
std::vector<ExactPoint3> anchor_points(int g, std::int64_t N, int i);

struct ScaffoldSegment {
    Anchor anchor;
    SlopeTag slope = SlopeTag::PlusOne;
    bool odd_class = true;  ///< (i - 1 + j) odd
    ExactSegment3 segment;
    ExactPoint3 direction;  ///< unit vector from segment.p to segment.q
};

struct Scaffold {
    SlopeRule rule = SlopeRule::Alternating;
    std::vector<ScaffoldSegment> segments;  ///< flat order: i ascending, then j
    std::vector<std::size_t> loop_offset;   ///< start of loop i (1-based) in segments; size g + 2

    std::size_t index(int i, int j) const { return loop_offset[static_cast<std::size_t>(i)] + static_cast<std::size_t>(j - 1); }
    std::size_t loop_size(int i) const { return loop_offset[static_cast<std::size_t>(i) + 1] - loop_offset[static_cast<std::size_t>(i)]; }
};

Scaffold build_scaffold(const Ladder& L, SlopeRule rule = SlopeRule::Alternating);

/// Scaled ladder copy tau_{i,j} = psi_{i,j}(gamma') placed on sigma_{i,j}.
struct LadderCopy {
    int i = 0, j = 0;
    SimilarityQ map;
    std::vector<PolyLoopQ> loops;    ///< psi(gamma'_k), k = 1..g'
    std::vector<PolyLoopD> loops_d;
};

/// Copies of `copied` along the scaffold of `host`; both ladders share N.
/// Flat order matches the scaffold (i ascending, then j).
std::vector<LadderCopy> build_copies(const Ladder& host, const Scaffold& scaffold, const Ladder& copied);
/// Self-similar case: copies of the host ladder itself.
std::vector<LadderCopy> build_copies(const Ladder& L, const Scaffold& scaffold);

/// Height interval [bottom, top] of a copy of a ladder of width C.
std::pair<QSqrt2, QSqrt2> copy_z_interval(std::int64_t N, int C, bool odd_class);

/// T^g = {delta(p, gamma) <= 1/24}.
TubeNeighborhood build_torus(const Ladder& L);
/// {delta(p, tau_{i,j}) <= sqrt(2) / (15 N)} for every copy.
std::vector<TubeNeighborhood> sub_tori(const Ladder& L, const std::vector<LadderCopy>& copies);

constexpr double kTorusRadius = 1.0 / 24.0;
double sub_torus_radius(std::int64_t N);

}  // namespace wildcantor
