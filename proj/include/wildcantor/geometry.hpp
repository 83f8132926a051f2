#pragma once

#include "wildcantor/similarity.hpp"
#include "wildcantor/vec3.hpp"

#include <stdexcept>
#include <vector>

namespace wildcantor {

template <class T>
struct Segment {
    Vec3<T> p, q;

    Segment() = default;
    Segment(Vec3<T> p_, Vec3<T> q_) : p(std::move(p_)), q(std::move(q_)) {
        if (p == q) throw std::invalid_argument("Segment: endpoints coincide");
    }
};

using Segment3 = Segment<double>;
using ExactSegment3 = Segment<QSqrt2>;

inline Segment3 to_double(const ExactSegment3& s) { return Segment3(to_double(s.p), to_double(s.q)); }

/// Squared Euclidean distance between closed segments, computed in T.
template <class T>
T segment_distance2(const Segment<T>& s, const Segment<T>& t);

extern template QSqrt2 segment_distance2<QSqrt2>(const ExactSegment3&, const ExactSegment3&);
extern template double segment_distance2<double>(const Segment3&, const Segment3&);

/// Squared Euclidean distance from a point to a closed segment.
template <class T>
T point_segment_distance2(const Vec3<T>& p, const Segment<T>& s);

extern template QSqrt2 point_segment_distance2<QSqrt2>(const ExactPoint3&, const ExactSegment3&);
extern template double point_segment_distance2<double>(const Point3&, const Segment3&);

/// Euclidean distance between closed segments (clamped closest points).
double segment_distance(const Segment3& s, const Segment3& t);

/// Exact intersection test for segments in the plane z = 0.
/// Throws std::invalid_argument if either segment leaves that plane.
bool segment_intersect(const ExactSegment3& s, const ExactSegment3& t);
/// Double inputs are converted exactly to rationals before testing.
bool segment_intersect(const Segment3& s, const Segment3& t);

/// Closed polygon; the last vertex connects back to the first.
template <class T>
class PolyLoop {
public:
    PolyLoop() = default;
    /// Validates size, distinct consecutive vertices and simplicity.
    explicit PolyLoop(std::vector<Vec3<T>> vertices, bool check_simple = true);

    const std::vector<Vec3<T>>& vertices() const { return v_; }
    std::size_t size() const { return v_.size(); }
    const Vec3<T>& operator[](std::size_t i) const { return v_[i]; }
    Segment<T> edge(std::size_t i) const { return Segment<T>(v_[i], v_[(i + 1) % v_.size()]); }
    PolyLoop reversed() const;

private:
    std::vector<Vec3<T>> v_;
};

using PolyLoopD = PolyLoop<double>;
using PolyLoopQ = PolyLoop<QSqrt2>;

extern template class PolyLoop<double>;
extern template class PolyLoop<QSqrt2>;

PolyLoopD to_double(const PolyLoopQ& L);
PolyLoopQ to_exact(const PolyLoopD& L);

template <class T>
PolyLoop<T> transform(const Similarity<T>& s, const PolyLoop<T>& L) {
    std::vector<Vec3<T>> out;
    out.reserve(L.size());
    for (const auto& v : L.vertices()) out.push_back(s.apply(v));
    return PolyLoop<T>(std::move(out), false);
}

/// sqrt(max(dx^2, dy^2) + dz^2).
double delta_metric(const Point3& p, const Point3& q);

/// Exact minimum of the delta distance from p to a segment.
double delta_point_to_segment(const Point3& p, const Segment3& s);
double delta_point_to_polyloop(const Point3& p, const PolyLoopD& L);

double euclid_point_to_polyloop(const Point3& p, const PolyLoopD& L);

enum class Metric { Delta, Euclidean };

/// Closed neighbourhood {p : dist(p, core) <= radius} of a union of loops.
struct TubeNeighborhood {
    std::vector<PolyLoopD> core;
    double radius = 0;
    Metric metric = Metric::Delta;

    TubeNeighborhood() = default;
    TubeNeighborhood(std::vector<PolyLoopD> core_, double radius_, Metric metric_ = Metric::Delta);

    double distance(const Point3& p) const;
    bool contains(const Point3& p) const { return distance(p) <= radius; }
};

/// Gauss linking integral of two closed polygons, evaluated edge pair by edge
/// pair with the closed-form solid-angle expression.
double gauss_linking_integral(const PolyLoopD& A, const PolyLoopD& B);

struct LinkingResult {
    int value = 0;          ///< signed-crossing count
    double gauss = 0;       ///< independent Gauss integral
    int projections_tried = 0;
};

/// Linking number from signed crossings of a generic sheared projection,
/// computed exactly in Q(sqrt 2). Crossing convention: a crossing where A
/// passes over B contributes sign(dA x dB) in the projected plane, which makes
/// a right-handed crossing count +1 and matches the Gauss integral.
/// Throws std::invalid_argument if the loops touch, std::runtime_error if no
/// generic projection is found or the Gauss integral disagrees by > 0.25.
LinkingResult linking_number_checked(const PolyLoopQ& A, const PolyLoopQ& B);
int linking_number(const PolyLoopQ& A, const PolyLoopQ& B);
int linking_number(const PolyLoopD& A, const PolyLoopD& B);

/// Signed-crossing count only (no Gauss cross-check). Used by sweeps that do
/// their own oracle sampling.
/// With assume_disjoint the exact touching test is skipped; callers must have
/// established a positive distance themselves.
int linking_number_crossings(const PolyLoopQ& A, const PolyLoopQ& B, int* projections_tried = nullptr,
                             bool assume_disjoint = false);

}  // namespace wildcantor
