#include "wildcantor/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace wildcantor {

namespace {

// Solid-angle contribution of one edge pair (Klenin-Langowski form).
double edge_pair_gauss(const Point3& p1, const Point3& p2, const Point3& p3, const Point3& p4) {
    const Point3 r13 = p3 - p1, r14 = p4 - p1, r23 = p3 - p2, r24 = p4 - p2;
    Point3 n[4] = {cross(r13, r14), cross(r14, r24), cross(r24, r23), cross(r23, r13)};
    for (auto& v : n) {
        const double len = norm(v);
        if (len < 1e-300) return 0.0;
        v = (1.0 / len) * v;
    }
    double omega = 0;
    for (int i = 0; i < 4; ++i) omega += std::asin(std::clamp(dot(n[i], n[(i + 1) % 4]), -1.0, 1.0));
    const double s = dot(cross(p4 - p3, p2 - p1), r13);
    return s > 0 ? omega : (s < 0 ? -omega : 0.0);
}

struct Proj {
    QSqrt2 x, y;
};

int orient(const Proj& a, const Proj& b, const Proj& c) {
    return ((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)).sign();
}

// Deterministic list of small rational shears (a, b); projection (x - a z, y - b z).
std::pair<QSqrt2, QSqrt2> shear(int k) {
    const long an = (37L * k) % 101 - 50;
    const long bn = (53L * k + 11) % 103 - 51;
    return {QSqrt2::rational(an, 101), QSqrt2::rational(bn, 103)};
}

constexpr int kMaxProjections = 64;

}  // namespace

double gauss_linking_integral(const PolyLoopD& A, const PolyLoopD& B) {
    double total = 0;
    for (std::size_t i = 0; i < A.size(); ++i) {
        const Point3& a0 = A[i];
        const Point3& a1 = A[(i + 1) % A.size()];
        for (std::size_t j = 0; j < B.size(); ++j) total += edge_pair_gauss(a0, a1, B[j], B[(j + 1) % B.size()]);
    }
    return total / (4.0 * std::numbers::pi);
}

int linking_number_crossings(const PolyLoopQ& A, const PolyLoopQ& B, int* projections_tried, bool assume_disjoint) {
    for (std::size_t i = 0; i < A.size() && !assume_disjoint; ++i)
        for (std::size_t j = 0; j < B.size(); ++j)
            if (segment_distance2(A.edge(i), B.edge(j)).sign() == 0)
                throw std::invalid_argument("linking_number: loops intersect");

    for (int k = 1; k <= kMaxProjections; ++k) {
        if (projections_tried) *projections_tried = k;
        const auto [sa, sb] = shear(k);
        auto project = [&](const ExactPoint3& p) { return Proj{p.x - sa * p.z, p.y - sb * p.z}; };
        std::vector<Proj> pa, pb;
        for (const auto& v : A.vertices()) pa.push_back(project(v));
        for (const auto& v : B.vertices()) pb.push_back(project(v));

        bool generic = true;
        int total = 0;
        for (std::size_t i = 0; i < A.size() && generic; ++i) {
            const Proj& e0 = pa[i];
            const Proj& e1 = pa[(i + 1) % A.size()];
            for (std::size_t j = 0; j < B.size(); ++j) {
                const Proj& f0 = pb[j];
                const Proj& f1 = pb[(j + 1) % B.size()];
                const int o1 = orient(f0, f1, e0), o2 = orient(f0, f1, e1);
                const int o3 = orient(e0, e1, f0), o4 = orient(e0, e1, f1);
                if ((o1 * o2 > 0) || (o3 * o4 > 0)) continue;  // separated
                if (o1 == 0 || o2 == 0 || o3 == 0 || o4 == 0) {
                    generic = false;
                    break;
                }
                // Proper crossing: compare heights along the projection direction.
                const ExactPoint3& E0 = A[i];
                const ExactPoint3& E1 = A[(i + 1) % A.size()];
                const ExactPoint3& F0 = B[j];
                const ExactPoint3& F1 = B[(j + 1) % B.size()];
                const QSqrt2 d1 = (f1.x - f0.x) * (e0.y - f0.y) - (f1.y - f0.y) * (e0.x - f0.x);
                const QSqrt2 d2 = (f1.x - f0.x) * (e1.y - f0.y) - (f1.y - f0.y) * (e1.x - f0.x);
                const QSqrt2 d3 = (e1.x - e0.x) * (f0.y - e0.y) - (e1.y - e0.y) * (f0.x - e0.x);
                const QSqrt2 d4 = (e1.x - e0.x) * (f1.y - e0.y) - (e1.y - e0.y) * (f1.x - e0.x);
                const QSqrt2 s = d1 / (d1 - d2);
                const QSqrt2 t = d3 / (d3 - d4);
                const QSqrt2 ze = E0.z + s * (E1.z - E0.z);
                const QSqrt2 zf = F0.z + t * (F1.z - F0.z);
                const int over = (ze - zf).sign();
                if (over == 0) {
                    generic = false;  // cannot happen for disjoint loops
                    break;
                }
                if (over > 0) {
                    const QSqrt2 c = (e1.x - e0.x) * (f1.y - f0.y) - (e1.y - e0.y) * (f1.x - f0.x);
                    total += c.sign();
                }
            }
        }
        if (generic) return total;
    }
    throw std::runtime_error("linking_number: no generic projection found");
}

LinkingResult linking_number_checked(const PolyLoopQ& A, const PolyLoopQ& B) {
    LinkingResult r;
    r.value = linking_number_crossings(A, B, &r.projections_tried);
    r.gauss = gauss_linking_integral(to_double(A), to_double(B));
    if (std::abs(r.gauss - r.value) > 0.25)
        throw std::runtime_error("linking_number: signed crossings disagree with Gauss integral");
    return r;
}

int linking_number(const PolyLoopQ& A, const PolyLoopQ& B) { return linking_number_checked(A, B).value; }

int linking_number(const PolyLoopD& A, const PolyLoopD& B) { return linking_number(to_exact(A), to_exact(B)); }

}  // namespace wildcantor
