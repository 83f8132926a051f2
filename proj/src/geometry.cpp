#include "wildcantor/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace wildcantor {

namespace {

template <class T>
T clamp01(const T& v) {
    if (sign_of(v) < 0) return T(0);
    if (sign_of(v - T(1)) > 0) return T(1);
    return v;
}

template <class T>
int orient2d(const Vec3<T>& a, const Vec3<T>& b, const Vec3<T>& c) {
    return sign_of((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x));
}

template <class T>
bool on_segment_collinear(const Vec3<T>& a, const Vec3<T>& b, const Vec3<T>& p) {
    auto lo = [](const T& u, const T& v) { return u < v ? u : v; };
    auto hi = [](const T& u, const T& v) { return u < v ? v : u; };
    return lo(a.x, b.x) <= p.x && p.x <= hi(a.x, b.x) && lo(a.y, b.y) <= p.y && p.y <= hi(a.y, b.y);
}

}  // namespace

template <class T>
T point_segment_distance2(const Vec3<T>& p, const Segment<T>& s) {
    const Vec3<T> u = s.q - s.p;
    const Vec3<T> w = p - s.p;
    const T t = clamp01(T(dot(w, u) / dot(u, u)));
    const Vec3<T> d = w - t * u;
    return dot(d, d);
}

template <class T>
T segment_distance2(const Segment<T>& s, const Segment<T>& t) {
    const Vec3<T> d1 = s.q - s.p;
    const Vec3<T> d2 = t.q - t.p;
    const Vec3<T> r = s.p - t.p;
    const T a = dot(d1, d1);
    const T e = dot(d2, d2);
    const T b = dot(d1, d2);
    const T c = dot(d1, r);
    const T f = dot(d2, r);
    T best = point_segment_distance2(s.p, t);
    auto take = [&best](T v) {
        if (v < best) best = std::move(v);
    };
    take(point_segment_distance2(s.q, t));
    take(point_segment_distance2(t.p, s));
    take(point_segment_distance2(t.q, s));
    const T denom = a * e - b * b;
    if (sign_of(denom) > 0) {
        const T sn = (b * f - c * e) / denom;
        const T tn = (a * f - b * c) / denom;
        if (sign_of(sn) >= 0 && sign_of(sn - T(1)) <= 0 && sign_of(tn) >= 0 && sign_of(tn - T(1)) <= 0) {
            const Vec3<T> diff = r + sn * d1 - tn * d2;
            take(dot(diff, diff));
        }
    }
    if (sign_of(best) < 0) best = T(0);  // double round-off only
    return best;
}

template QSqrt2 segment_distance2<QSqrt2>(const ExactSegment3&, const ExactSegment3&);
template double segment_distance2<double>(const Segment3&, const Segment3&);
template QSqrt2 point_segment_distance2<QSqrt2>(const ExactPoint3&, const ExactSegment3&);
template double point_segment_distance2<double>(const Point3&, const Segment3&);

double segment_distance(const Segment3& s, const Segment3& t) { return std::sqrt(segment_distance2(s, t)); }

bool segment_intersect(const ExactSegment3& s, const ExactSegment3& t) {
    for (const auto* p : {&s.p, &s.q, &t.p, &t.q})
        if (p->z.sign() != 0) throw std::invalid_argument("segment_intersect: segments must lie in the plane z = 0");
    const int o1 = orient2d(s.p, s.q, t.p);
    const int o2 = orient2d(s.p, s.q, t.q);
    const int o3 = orient2d(t.p, t.q, s.p);
    const int o4 = orient2d(t.p, t.q, s.q);
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    if (o1 == 0 && on_segment_collinear(s.p, s.q, t.p)) return true;
    if (o2 == 0 && on_segment_collinear(s.p, s.q, t.q)) return true;
    if (o3 == 0 && on_segment_collinear(t.p, t.q, s.p)) return true;
    if (o4 == 0 && on_segment_collinear(t.p, t.q, s.q)) return true;
    return false;
}

bool segment_intersect(const Segment3& s, const Segment3& t) {
    return segment_intersect(ExactSegment3(to_exact(s.p), to_exact(s.q)), ExactSegment3(to_exact(t.p), to_exact(t.q)));
}

template <class T>
PolyLoop<T>::PolyLoop(std::vector<Vec3<T>> vertices, bool check_simple) : v_(std::move(vertices)) {
    const std::size_t n = v_.size();
    if (n < 3) throw std::invalid_argument("PolyLoop: need at least 3 vertices");
    for (std::size_t i = 0; i < n; ++i)
        if (v_[i] == v_[(i + 1) % n]) throw std::invalid_argument("PolyLoop: consecutive vertices coincide");
    if (!check_simple) return;
    for (std::size_t i = 0; i < n; ++i) {
        // Adjacent edges meet only at their shared vertex unless they fold back.
        const Vec3<T>& a = v_[i];
        const Vec3<T>& b = v_[(i + 1) % n];
        const Vec3<T>& c = v_[(i + 2) % n];
        const Vec3<T> cr = cross(Vec3<T>(a - b), Vec3<T>(c - b));
        if (sign_of(dot(cr, cr)) == 0 && sign_of(dot(a - b, c - b)) > 0)
            throw std::invalid_argument("PolyLoop: adjacent edges overlap");
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;
            if (sign_of(segment_distance2(edge(i), edge(j))) == 0)
                throw std::invalid_argument("PolyLoop: loop is not simple");
        }
    }
}

template <class T>
PolyLoop<T> PolyLoop<T>::reversed() const {
    std::vector<Vec3<T>> r(v_.rbegin(), v_.rend());
    return PolyLoop<T>(std::move(r), false);
}

template class PolyLoop<double>;
template class PolyLoop<QSqrt2>;

PolyLoopD to_double(const PolyLoopQ& L) {
    std::vector<Point3> v;
    v.reserve(L.size());
    for (const auto& p : L.vertices()) v.push_back(to_double(p));
    return PolyLoopD(std::move(v), false);
}

PolyLoopQ to_exact(const PolyLoopD& L) {
    std::vector<ExactPoint3> v;
    v.reserve(L.size());
    for (const auto& p : L.vertices()) v.push_back(to_exact(p));
    return PolyLoopQ(std::move(v), false);
}

double delta_metric(const Point3& p, const Point3& q) {
    const double dx = p.x - q.x, dy = p.y - q.y, dz = p.z - q.z;
    return std::sqrt(std::max(dx * dx, dy * dy) + dz * dz);
}

double delta_point_to_segment(const Point3& p, const Segment3& s) {
    const Point3 a = s.p - p;
    const Point3 d = s.q - s.p;
    // f(t) = max(X^2, Y^2) + Z^2 with X = a.x + t d.x etc.; convex and piecewise quadratic.
    auto f = [&](double t) {
        const double X = a.x + t * d.x, Y = a.y + t * d.y, Z = a.z + t * d.z;
        return std::max(X * X, Y * Y) + Z * Z;
    };
    std::array<double, 4> cuts{};
    std::size_t nc = 0;
    cuts[nc++] = 0.0;
    if (d.x != d.y) {
        const double t = (a.y - a.x) / (d.x - d.y);
        if (t > 0 && t < 1) cuts[nc++] = t;
    }
    if (d.x != -d.y) {
        const double t = -(a.x + a.y) / (d.x + d.y);
        if (t > 0 && t < 1) cuts[nc++] = t;
    }
    cuts[nc++] = 1.0;
    std::sort(cuts.begin(), cuts.begin() + static_cast<long>(nc));
    double best = std::min(f(0.0), f(1.0));
    for (std::size_t k = 0; k + 1 < nc; ++k) {
        const double lo = cuts[k], hi = cuts[k + 1];
        best = std::min(best, f(lo));
        const double mid = 0.5 * (lo + hi);
        const double X = a.x + mid * d.x, Y = a.y + mid * d.y;
        // On this piece the active square is fixed; minimise it plus Z^2.
        const bool xs = X * X >= Y * Y;
        const double ac = xs ? a.x : a.y;
        const double dc = xs ? d.x : d.y;
        const double den = dc * dc + d.z * d.z;
        if (den > 0) {
            const double t = std::clamp(-(ac * dc + a.z * d.z) / den, lo, hi);
            best = std::min(best, f(t));
        }
    }
    return std::sqrt(best);
}

double delta_point_to_polyloop(const Point3& p, const PolyLoopD& L) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < L.size(); ++i) best = std::min(best, delta_point_to_segment(p, L.edge(i)));
    return best;
}

double euclid_point_to_polyloop(const Point3& p, const PolyLoopD& L) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < L.size(); ++i) best = std::min(best, point_segment_distance2(p, L.edge(i)));
    return std::sqrt(best);
}

TubeNeighborhood::TubeNeighborhood(std::vector<PolyLoopD> core_, double radius_, Metric metric_)
    : core(std::move(core_)), radius(radius_), metric(metric_) {
    if (!(radius > 0)) throw std::invalid_argument("TubeNeighborhood: radius must be positive");
    if (core.empty()) throw std::invalid_argument("TubeNeighborhood: empty core");
}

double TubeNeighborhood::distance(const Point3& p) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& L : core)
        best = std::min(best, metric == Metric::Delta ? delta_point_to_polyloop(p, L) : euclid_point_to_polyloop(p, L));
    return best;
}

}  // namespace wildcantor
