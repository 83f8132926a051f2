#include "wildcantor/qsqrt2.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace wildcantor {

QSqrt2 QSqrt2::from_double(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("QSqrt2::from_double: non-finite value");
    mpq_class q;
    mpq_set_d(q.get_mpq_t(), v);
    return QSqrt2(q);
}

int QSqrt2::sign() const {
    const int sa = sgn(a_);
    const int sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: compare a^2 with 2 b^2.
    const int cmp = ::cmp(a_ * a_, 2 * b_ * b_);
    if (cmp == 0) return 0;  // unreachable for rationals, kept for safety
    return cmp > 0 ? sa : sb;
}

double QSqrt2::to_double() const {
    const double a = a_.get_d();
    const double b = b_.get_d();
    if (sgn(a_) * sgn(b_) >= 0) return a + b * std::sqrt(2.0);
    // Cancellation: a + b r = (a^2 - 2b^2) / (a - b r).
    return norm().get_d() / (a - b * std::sqrt(2.0));
}

QSqrt2& QSqrt2::operator*=(const QSqrt2& o) {
    mpq_class na = a_ * o.a_ + 2 * b_ * o.b_;
    mpq_class nb = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(na);
    b_ = std::move(nb);
    return *this;
}

QSqrt2& QSqrt2::operator/=(const QSqrt2& o) {
    const mpq_class n = o.norm();
    if (n == 0) throw std::domain_error("QSqrt2: division by zero");
    *this *= o.conjugate();
    a_ /= n;
    b_ /= n;
    return *this;
}

std::string QSqrt2::str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const QSqrt2& v) {
    if (v.is_rational()) return os << v.rational_part().get_str();
    return os << v.rational_part().get_str() << (sgn(v.sqrt2_part()) < 0 ? " - " : " + ")
              << mpq_class(abs(v.sqrt2_part())).get_str() << "*sqrt2";
}

}  // namespace wildcantor
