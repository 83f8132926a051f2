#pragma once

#include "wildcantor/mesh.hpp"
#include "wildcantor/verify.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace wildcantor {

/// Piece of the boundary of V_2 a sample belongs to.
///  S1: disk D1 and the top-edge sub-tori inside V_2
///  S2: the sub-torus at the upper right corner
///  S3: disk D3 and the remaining right-edge sub-tori inside V_2
///  S4: the bent tube surface joining C1, C2 and C3
enum class DeformPiece { S1, S2, S3, S4 };

struct DeformSample {
    DeformPiece piece = DeformPiece::S4;
    Point3 p;
    double theta = 0;  ///< cross-section angle on S4
    double s = 0;      ///< position along S4: 0 at C1, 1/2 at C2, 1 at C3
};

/// (r cos th, a r sin th) -> ((r + r a t - r t) cos th, a r sin th).
std::array<double, 2> ellipse_to_circle(double r, double a, double theta, double t);

/// l = (13 sqrt(2) - 10) / (20 N).
double deformation_shift(std::int64_t N);

/// The three-stage deformation of the boundary of V_2 in the genus k + 1 torus.
struct Deformation {
    int k = 0;
    Construction construction;
    double C = 0;  ///< C_{k+1,k}: left side of the last loop
    double r = 0;  ///< tube radius
    double l = 0;
    Point3 w1, w2, w3;
    Point3 w0, v0;  ///< rotation centres of stages two and three (z = 0)
    std::vector<std::size_t> s1_copies, s3_copies;
    std::size_t s2_copy = 0;

    /// S4 at cross-section angle theta and position s.
    Point3 s4_point(double theta, double s) const;
    /// H_t, the concatenation of the stages (stage j runs over [(j-1)/3, j/3]).
    Point3 eval(const DeformSample& q, double t) const;
    /// One stage at its own time tau, applied after the earlier stages at time 1.
    Point3 stage(int which, double tau, const DeformSample& q) const;

private:
    Point3 stage_map(int which, double tau, DeformPiece piece, const Point3& p, int curve) const;
    Point3 s4_stage(int which, double tau, const DeformSample& q) const;
    Point3 curve_point(int curve, double theta) const;
    Point3 before_stage(int which, const DeformSample& q) const;
};

/// n = k + 1 >= 2 and density N (0: the genus-(2k+1) default).
Deformation build_deformation(int k, std::int64_t N = 0);

/// Sampled boundary of V_2 as a triangle mesh with one sample per vertex.
struct DeformationSurface {
    TriMesh mesh;
    std::vector<DeformSample> samples;
};

/// `resolution` sets the S4 grid (4 * resolution angles by 2 * resolution
/// positions) and the disk rings; sub-tori use coarse similarity images of
/// the torus mesh.
DeformationSurface deformation_surface(const Deformation& d, int resolution = 8);

/// The surface mesh moved by H_t.
TriMesh deformation_snapshot(const Deformation& d, const DeformationSurface& s, double t);

struct BiLipschitzEstimate {
    double lower = 0;
    double upper = 0;
    std::size_t pairs = 0;
};

/// min and max of |after[a] - after[b]| / |before[a] - before[b]| over
/// neighbouring index pairs plus seeded random pairs, up to `pair_budget`.
BiLipschitzEstimate estimate_bilipschitz(const std::vector<Point3>& before, const std::vector<Point3>& after,
                                         std::size_t pair_budget = 100000, std::uint64_t seed = 20240611, int jobs = 1);

}  // namespace wildcantor
