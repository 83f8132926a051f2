#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>

namespace wildcantor {

/// Exact element a + b*sqrt(2) of the quadratic field Q(sqrt 2).
class QSqrt2 {
public:
    QSqrt2() : a_(0), b_(0) {}
    QSqrt2(int v) : a_(v), b_(0) {}  // NOLINT: implicit by design
    QSqrt2(mpq_class a) : a_(std::move(a)), b_(0) {}  // NOLINT
    QSqrt2(mpq_class a, mpq_class b) : a_(std::move(a)), b_(std::move(b)) {}

    /// Exact conversion of a finite double (every double is a dyadic rational).
    static QSqrt2 from_double(double v);
    static QSqrt2 sqrt2() { return QSqrt2(0, 1); }
    static QSqrt2 rational(long num, long den) {
        mpq_class q(num);
        q /= den;
        return QSqrt2(q);
    }

    const mpq_class& rational_part() const { return a_; }
    const mpq_class& sqrt2_part() const { return b_; }
    bool is_rational() const { return b_ == 0; }

    /// Sign of the real number a + b*sqrt(2), decided exactly.
    int sign() const;
    double to_double() const;
    std::string str() const;

    QSqrt2 conjugate() const { return QSqrt2(a_, -b_); }
    /// Field norm a^2 - 2 b^2.
    mpq_class norm() const { return a_ * a_ - 2 * b_ * b_; }

    QSqrt2& operator+=(const QSqrt2& o) { a_ += o.a_; b_ += o.b_; return *this; }
    QSqrt2& operator-=(const QSqrt2& o) { a_ -= o.a_; b_ -= o.b_; return *this; }
    QSqrt2& operator*=(const QSqrt2& o);
    QSqrt2& operator/=(const QSqrt2& o);

    friend QSqrt2 operator+(QSqrt2 x, const QSqrt2& y) { return x += y; }
    friend QSqrt2 operator-(QSqrt2 x, const QSqrt2& y) { return x -= y; }
    friend QSqrt2 operator*(QSqrt2 x, const QSqrt2& y) { return x *= y; }
    friend QSqrt2 operator/(QSqrt2 x, const QSqrt2& y) { return x /= y; }
    friend QSqrt2 operator-(const QSqrt2& x) { return QSqrt2(-x.a_, -x.b_); }

    friend bool operator==(const QSqrt2& x, const QSqrt2& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
    friend bool operator!=(const QSqrt2& x, const QSqrt2& y) { return !(x == y); }
    friend bool operator<(const QSqrt2& x, const QSqrt2& y) { return (x - y).sign() < 0; }
    friend bool operator>(const QSqrt2& x, const QSqrt2& y) { return y < x; }
    friend bool operator<=(const QSqrt2& x, const QSqrt2& y) { return !(y < x); }
    friend bool operator>=(const QSqrt2& x, const QSqrt2& y) { return !(x < y); }

private:
    mpq_class a_;
    mpq_class b_;
};

std::ostream& operator<<(std::ostream& os, const QSqrt2& v);

inline double to_double(double v) { return v; }
inline double to_double(const QSqrt2& v) { return v.to_double(); }
inline int sign_of(double v) { return (v > 0) - (v < 0); }
inline int sign_of(const QSqrt2& v) { return v.sign(); }

}  // namespace wildcantor
