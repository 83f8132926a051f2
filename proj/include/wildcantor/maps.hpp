#pragma once

#include "wildcantor/verify.hpp"

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace wildcantor {

/// Affine isometry p -> L p + b with exact coefficients.
struct AffineIsometry {
    std::string name;
    Mat3<QSqrt2> linear = identity_matrix<QSqrt2>();
    ExactPoint3 offset{QSqrt2(0), QSqrt2(0), QSqrt2(0)};

    ExactPoint3 apply(const ExactPoint3& p) const { return mat_vec(linear, p) + offset; }
    Point3 apply(const Point3& p) const;
    AffineIsometry compose(const AffineIsometry& other) const;  ///< this o other
    bool operator==(const AffineIsometry& o) const { return linear == o.linear && offset == o.offset; }
};

/// Prefix sum C_{n,i} of the genus-n widths.
int width_prefix(int n, int i);

/// Half-turn about {z = 0, x = C_{2k,k}}: (2C_{2k,k} - x, y, -z).
AffineIsometry iota1(int k);
/// Half-turn about {y = 1/2, x = C_{2k+1,k} + 3/2}: (2C_{2k+1,k} + 3 - x, 1 - y, z).
AffineIsometry iota2(int k);
/// Quarter-turn (y + C_{k+1,k}, C_{k+1,k+1} - x, z).
AffineIsometry iota3(int k);
/// Half-turn about the x-axis: (x, -y, -z).
AffineIsometry iota();

struct FoldingReport {
    Certificate certificate;
    /// permutation[t] = flat index of the copy whose curves iota1 maps copy t onto.
    std::vector<std::size_t> permutation;
};

/// Checks that iota1 maps the genus-n core vertices onto themselves and
/// permutes the copy curves (exact vertex-set equality). n must be even.
FoldingReport check_folding_invariance(int n, std::int64_t N = 0, SlopeRule rule = SlopeRule::Alternating);

/// lower <= coordinate <= upper on one axis (0 = x, 1 = y, 2 = z).
struct SlabConstraint {
    int axis = 0;
    std::optional<double> lower, upper;
    bool holds(const Point3& p) const;
};

/// A solid torus with its sub-tori, shared by the slab regions cut from it.
struct SlabDomain {
    Construction construction;
    TubeNeighborhood torus;
    double sub_radius = 0;
    std::vector<std::array<double, 4>> boxes;  ///< xy boxes of the copies grown by sub_radius

    /// Smallest delta distance to a copy core, or +inf when no copy box is near.
    double distance_to_sub_tori(const Point3& p) const;
};

/// One of U_1..U_6 or V_1..V_3: torus minus sub-tori, cut by slabs. U regions
/// remove the open sub-tori, V regions the closed ones.
struct SlabRegion {
    std::string name;
    std::shared_ptr<const SlabDomain> domain;
    std::vector<SlabConstraint> constraints;
    bool remove_closed_sub_tori = false;

    bool satisfies_slabs(const Point3& p) const;
};

bool region_membership(const Point3& p, const SlabRegion& region);

struct OddDecomposition {
    int k = 0;
    std::array<SlabRegion, 6> U;  ///< in T^{2k+1}
    std::array<SlabRegion, 3> V;  ///< in T^{k+1}
};

/// U and V regions for n = 2k + 1 >= 3. Both tori use the scaffold density N
/// (0: the genus-n default).
OddDecomposition decompose_odd(int n, std::int64_t N = 0);

enum class SlabPlacement { Region, Gap, SubTorus, Outside };

struct SlabClass {
    SlabPlacement placement = SlabPlacement::Outside;
    std::vector<std::string> regions;  ///< every U region containing the point
};

/// Sorts a point of T^{2k+1} into the U regions; points of the domain
/// missed by every U region are reported as Gap.
SlabClass classify_odd(const Point3& p, const OddDecomposition& d);

struct Cylindrical {
    double r = 0, theta = 0, z = 0;
};

Cylindrical to_cylindrical(const Point3& p);
Point3 from_cylindrical(const Cylindrical& c);

/// omega(r, theta, z) = (r, 2 N theta, z), returned in Cartesian coordinates.
Point3 winding_map(const Cylindrical& c, std::int64_t N);
Point3 winding_map(const Point3& p, std::int64_t N);

/// ceil(log2 g).
int ceil_log2(int g);
/// 2^{ceil(log2 g) + 2} N.
std::int64_t degree(int g, std::int64_t N);
/// Base-2 logarithm of (4 C_g)^{2 sqrt(N) 2^{ceil(log2 g) / 2}}.
double escape_radius_log2(int g, std::int64_t N);
/// The escape radius itself; +inf once it exceeds the double range.
double escape_radius(int g, std::int64_t N);
/// r^{2^{n/2} d}.
double power_radius(double r, double n, double d);

/// A(x1, x2, x3) = (x1 - x2, x1 + x2, sqrt(2) x3) as a similarity.
SimilarityQ zorich_linear_part();

/// Exact check of A g1 A^-1 = g2 g1, A g2 A^-1 = g2 g1^-1 and A g3 A^-1 = g3,
/// plus agreement on seeded random points.
Certificate check_conjugation(std::size_t samples = 1000, std::uint64_t seed = 20240611);

}  // namespace wildcantor
