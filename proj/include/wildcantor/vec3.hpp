#pragma once

#include "wildcantor/qsqrt2.hpp"

#include <cmath>

namespace wildcantor {

template <class T>
struct Vec3 {
    T x{}, y{}, z{};

    Vec3() = default;
    Vec3(T x_, T y_, T z_) : x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {}

    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    friend Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
    friend Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
    friend Vec3 operator-(const Vec3& a) { return Vec3(-a.x, -a.y, -a.z); }
    friend Vec3 operator*(const T& s, const Vec3& a) { return Vec3(s * a.x, s * a.y, s * a.z); }
    friend Vec3 operator*(const Vec3& a, const T& s) { return s * a; }
    friend bool operator==(const Vec3& a, const Vec3& b) { return a.x == b.x && a.y == b.y && a.z == b.z; }
    friend bool operator!=(const Vec3& a, const Vec3& b) { return !(a == b); }
};

using Point3 = Vec3<double>;
using ExactPoint3 = Vec3<QSqrt2>;

template <class T>
T dot(const Vec3<T>& a, const Vec3<T>& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

template <class T>
Vec3<T> cross(const Vec3<T>& a, const Vec3<T>& b) {
    return Vec3<T>(a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x);
}

template <class T>
T norm2(const Vec3<T>& a) {
    return dot(a, a);
}

inline double norm(const Point3& a) { return std::sqrt(norm2(a)); }
inline double distance(const Point3& a, const Point3& b) { return norm(a - b); }

inline Point3 to_double(const ExactPoint3& p) { return {p.x.to_double(), p.y.to_double(), p.z.to_double()}; }
inline Point3 to_double(const Point3& p) { return p; }
inline ExactPoint3 to_exact(const Point3& p) {
    return {QSqrt2::from_double(p.x), QSqrt2::from_double(p.y), QSqrt2::from_double(p.z)};
}

}  // namespace wildcantor
