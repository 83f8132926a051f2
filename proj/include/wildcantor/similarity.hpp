#pragma once

#include "wildcantor/vec3.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace wildcantor {

/// Row-major 3x3 matrix.
template <class T>
using Mat3 = std::array<T, 9>;

template <class T>
Mat3<T> identity_matrix() {
    return {T(1), T(0), T(0), T(0), T(1), T(0), T(0), T(0), T(1)};
}

template <class T>
Mat3<T> mat_mul(const Mat3<T>& a, const Mat3<T>& b) {
    Mat3<T> r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[3 * i + j] = a[3 * i] * b[j] + a[3 * i + 1] * b[3 + j] + a[3 * i + 2] * b[6 + j];
    return r;
}

template <class T>
Mat3<T> transpose(const Mat3<T>& a) {
    return {a[0], a[3], a[6], a[1], a[4], a[7], a[2], a[5], a[8]};
}

template <class T>
Vec3<T> mat_vec(const Mat3<T>& m, const Vec3<T>& v) {
    return {m[0] * v.x + m[1] * v.y + m[2] * v.z, m[3] * v.x + m[4] * v.y + m[5] * v.z,
            m[6] * v.x + m[7] * v.y + m[8] * v.z};
}

template <class T>
T determinant(const Mat3<T>& m) {
    return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) + m[2] * (m[3] * m[7] - m[4] * m[6]);
}

/// Orientation-preserving similarity p -> scale * R p + t.
template <class T>
struct Similarity {
    T scale = T(1);
    Mat3<T> rotation = identity_matrix<T>();
    Vec3<T> translation{T(0), T(0), T(0)};

    static Similarity identity() { return Similarity{}; }

    Vec3<T> apply(const Vec3<T>& p) const { return scale * mat_vec(rotation, p) + translation; }
    Vec3<T> operator()(const Vec3<T>& p) const { return apply(p); }

    /// (this o other)(p) = this(other(p)).
    Similarity compose(const Similarity& other) const {
        Similarity r;
        r.scale = scale * other.scale;
        r.rotation = mat_mul(rotation, other.rotation);
        r.translation = scale * mat_vec(rotation, other.translation) + translation;
        return r;
    }

    Similarity inverse() const {
        Similarity r;
        r.scale = T(1) / scale;
        r.rotation = transpose(rotation);
        r.translation = -(r.scale * mat_vec(r.rotation, translation));
        return r;
    }
};

using SimilarityD = Similarity<double>;
using SimilarityQ = Similarity<QSqrt2>;

template <class T>
Similarity<T> compose(const Similarity<T>& a, const Similarity<T>& b) {
    return a.compose(b);
}

inline Point3 apply_similarity(const SimilarityD& s, const Point3& p) { return s.apply(p); }

inline SimilarityD to_double(const SimilarityQ& s) {
    SimilarityD r;
    r.scale = s.scale.to_double();
    for (int i = 0; i < 9; ++i) r.rotation[i] = s.rotation[i].to_double();
    r.translation = to_double(s.translation);
    return r;
}

/// Exact check: R^T R = I, det R = 1, scale > 0.
inline bool is_valid_similarity(const SimilarityQ& s) {
    if (s.scale.sign() <= 0) return false;
    const auto rtr = mat_mul(transpose(s.rotation), s.rotation);
    return rtr == identity_matrix<QSqrt2>() && determinant(s.rotation) == QSqrt2(1);
}

/// Floating check with the 1e-12 tolerances of the Similarity invariants.
inline bool is_valid_similarity(const SimilarityD& s, double tol = 1e-12) {
    if (!(s.scale > 0)) return false;
    const auto rtr = mat_mul(transpose(s.rotation), s.rotation);
    const auto id = identity_matrix<double>();
    for (int i = 0; i < 9; ++i)
        if (std::abs(rtr[i] - id[i]) > tol) return false;
    return std::abs(determinant(s.rotation) - 1.0) <= tol;
}

}  // namespace wildcantor
