#include "wildcantor/maps.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>

namespace wildcantor {

namespace {

QSqrt2 Q(long n, long d = 1) { return QSqrt2::rational(n, d); }

AffineIsometry make_isometry(std::string name, const std::array<long, 9>& linear, ExactPoint3 offset) {
    AffineIsometry f;
    f.name = std::move(name);
    for (int i = 0; i < 9; ++i) f.linear[i] = Q(linear[i]);
    f.offset = std::move(offset);
    return f;
}

}  // namespace

Point3 AffineIsometry::apply(const Point3& p) const {
    Mat3<double> L;
    for (int i = 0; i < 9; ++i) L[i] = linear[i].to_double();
    return mat_vec(L, p) + to_double(offset);
}

AffineIsometry AffineIsometry::compose(const AffineIsometry& other) const {
    AffineIsometry r;
    r.name = name + " o " + other.name;
    r.linear = mat_mul(linear, other.linear);
    r.offset = mat_vec(linear, other.offset) + offset;
    return r;
}

int width_prefix(int n, int i) {
    const auto w = widths_and_prefix_sums(folding_sequence(n));
    if (i < 0 || static_cast<std::size_t>(i) >= w.C.size()) throw std::out_of_range("width_prefix: index outside 0..n");
    return w.C[static_cast<std::size_t>(i)];
}

AffineIsometry iota1(int k) {
    if (k < 1) throw std::invalid_argument("iota1: k must be positive");
    return make_isometry("iota1", {-1, 0, 0, 0, 1, 0, 0, 0, -1}, {Q(2 * width_prefix(2 * k, k)), Q(0), Q(0)});
}

AffineIsometry iota2(int k) {
    if (k < 1) throw std::invalid_argument("iota2: k must be positive");
    return make_isometry("iota2", {-1, 0, 0, 0, -1, 0, 0, 0, 1}, {Q(2 * width_prefix(2 * k + 1, k) + 3), Q(1), Q(0)});
}

AffineIsometry iota3(int k) {
    if (k < 1) throw std::invalid_argument("iota3: k must be positive");
    return make_isometry("iota3", {0, 1, 0, -1, 0, 0, 0, 0, 1}, {Q(width_prefix(k + 1, k)), Q(width_prefix(k + 1, k + 1)), Q(0)});
}

AffineIsometry iota() { return make_isometry("iota", {1, 0, 0, 0, -1, 0, 0, 0, -1}, {Q(0), Q(0), Q(0)}); }

FoldingReport check_folding_invariance(int n, std::int64_t N, SlopeRule rule) {
    const auto t0 = std::chrono::steady_clock::now();
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("check_folding_invariance: n must be even and at least 2");
    const Construction c = construct(n, N, rule);
    const AffineIsometry f = iota1(n / 2);

    FoldingReport rep;
    Certificate& cert = rep.certificate;
    cert.lemma = "folding";
    cert.g = n;
    cert.N = c.ladder.N();
    cert.figure_mode = !is_admissible_density(cert.N, n);

    auto vertex_set = [](const std::vector<PolyLoopQ>& loops) {
        std::vector<ExactPoint3> v;
        for (const auto& L : loops) v.insert(v.end(), L.vertices().begin(), L.vertices().end());
        return v;
    };
    auto key_of = [](const std::vector<ExactPoint3>& v) {
        std::vector<std::int64_t> key;
        for (const auto& p : v)
            for (const auto& x : {p.x, p.y, p.z}) key.push_back(std::llround(x.to_double() * 1e9));
        // Sort point triples so the key ignores vertex order.
        std::vector<std::array<std::int64_t, 3>> pts;
        for (std::size_t i = 0; i < key.size(); i += 3) pts.push_back({key[i], key[i + 1], key[i + 2]});
        std::sort(pts.begin(), pts.end());
        return pts;
    };
    auto same_set = [](const std::vector<ExactPoint3>& a, const std::vector<ExactPoint3>& b) {
        if (a.size() != b.size()) return false;
        for (const auto& p : a)
            if (std::find(b.begin(), b.end(), p) == b.end()) return false;
        for (const auto& p : b)
            if (std::find(a.begin(), a.end(), p) == a.end()) return false;
        return true;
    };

    // Core curve.
    const auto core = vertex_set(c.ladder.loops);
    std::vector<ExactPoint3> core_img;
    for (const auto& p : core) core_img.push_back(f.apply(p));
    const bool core_ok = same_set(core, core_img);

    std::map<std::vector<std::array<std::int64_t, 3>>, std::vector<std::size_t>> index;
    std::vector<std::vector<ExactPoint3>> sets(c.m());
    for (std::size_t t = 0; t < c.m(); ++t) {
        sets[t] = vertex_set(c.copies[t].loops);
        index[key_of(sets[t])].push_back(t);
    }
    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    rep.permutation.assign(c.m(), kNone);
    std::size_t unmatched = 0, fixed = 0;
    std::optional<std::size_t> first_unmatched;
    for (std::size_t t = 0; t < c.m(); ++t) {
        std::vector<ExactPoint3> img;
        for (const auto& p : sets[t]) img.push_back(f.apply(p));
        const auto it = index.find(key_of(img));
        if (it != index.end())
            for (std::size_t u : it->second)
                if (same_set(img, sets[u])) {
                    rep.permutation[t] = u;
                    break;
                }
        if (rep.permutation[t] == kNone) {
            ++unmatched;
            if (!first_unmatched) first_unmatched = t;
        } else if (rep.permutation[t] == t) {
            ++fixed;
        }
    }
    bool involution = unmatched == 0;
    for (std::size_t t = 0; involution && t < c.m(); ++t) involution = rep.permutation[rep.permutation[t]] == t;

    cert.stat("copies", static_cast<double>(c.m()));
    cert.stat("core_invariant", core_ok ? 1 : 0);
    cert.stat("unmatched_copies", static_cast<double>(unmatched));
    cert.stat("fixed_copies", static_cast<double>(fixed));
    cert.stat("involution", involution ? 1 : 0);
    cert.status = core_ok && unmatched == 0 && involution ? Status::Pass : Status::Fail;
    if (first_unmatched)
        cert.witness = {c.label(*first_unmatched), "", 0, 0, "image curves match no copy"};
    else if (!core_ok)
        cert.witness = {"", "", 0, 0, "core vertex set not invariant"};
    else
        cert.witness = {"", "", static_cast<double>(fixed), 0, "copies fixed by the involution"};
    cert.margin = cert.passed() ? 0 : -1;
    cert.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

bool SlabConstraint::holds(const Point3& p) const {
    const double v = axis == 0 ? p.x : (axis == 1 ? p.y : p.z);
    return (!lower || v >= *lower) && (!upper || v <= *upper);
}

double SlabDomain::distance_to_sub_tori(const Point3& p) const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < boxes.size(); ++t) {
        const auto& b = boxes[t];
        if (p.x < b[0] || p.x > b[1] || p.y < b[2] || p.y > b[3]) continue;
        for (const auto& loop : construction.copies[t].loops_d) best = std::min(best, delta_point_to_polyloop(p, loop));
    }
    return best;
}

bool SlabRegion::satisfies_slabs(const Point3& p) const {
    return std::all_of(constraints.begin(), constraints.end(), [&](const SlabConstraint& c) { return c.holds(p); });
}

bool region_membership(const Point3& p, const SlabRegion& region) {
    if (!region.satisfies_slabs(p)) return false;
    const SlabDomain& d = *region.domain;
    if (!d.torus.contains(p)) return false;
    const double s = d.distance_to_sub_tori(p);
    return region.remove_closed_sub_tori ? s > d.sub_radius : s >= d.sub_radius;
}

namespace {

std::shared_ptr<const SlabDomain> make_domain(int g, std::int64_t N) {
    auto d = std::make_shared<SlabDomain>();
    d->construction = construct(g, N);
    d->torus = build_torus(d->construction.ladder);
    d->sub_radius = sub_torus_radius(d->construction.ladder.N());
    for (const auto& cp : d->construction.copies) {
        std::array<double, 4> b{1e300, -1e300, 1e300, -1e300};
        for (const auto& L : cp.loops_d)
            for (const auto& v : L.vertices()) {
                b[0] = std::min(b[0], v.x), b[1] = std::max(b[1], v.x);
                b[2] = std::min(b[2], v.y), b[3] = std::max(b[3], v.y);
            }
        const double r = d->sub_radius;
        d->boxes.push_back({b[0] - r, b[1] + r, b[2] - r, b[3] + r});
    }
    return d;
}

SlabConstraint x_range(std::optional<double> lo, std::optional<double> hi) { return {0, lo, hi}; }
SlabConstraint y_range(std::optional<double> lo, std::optional<double> hi) { return {1, lo, hi}; }

}  // namespace

OddDecomposition decompose_odd(int n, std::int64_t N) {
    if (n < 3 || n % 2 == 0) throw std::invalid_argument("decompose_odd: n must be odd and at least 3");
    const int k = (n - 1) / 2;
    OddDecomposition d;
    d.k = k;
    if (N == 0) N = min_scaffold_density(n);
    const auto host = make_domain(n, N);
    const auto target = make_domain(k + 1, N);
    const double C = width_prefix(n, k);
    const std::nullopt_t none = std::nullopt;
    d.U[0] = {"U1", host, {x_range(none, C + 0.5)}, false};
    d.U[1] = {"U2", host, {x_range(C + 0.75, C + 1.5), y_range(0.5, none)}, false};
    d.U[2] = {"U3", host, {x_range(C + 1.5, C + 2.25), y_range(0.5, none)}, false};
    d.U[3] = {"U4", host, {x_range(C + 0.75, C + 1.5), y_range(none, 0.5)}, false};
    d.U[4] = {"U5", host, {x_range(C + 1.5, C + 2.25), y_range(none, 0.5)}, false};
    d.U[5] = {"U6", host, {x_range(C + 2.25, none)}, false};
    const double Ck = width_prefix(k + 1, k);
    d.V[0] = {"V1", target, {x_range(none, Ck + 0.5)}, true};
    d.V[1] = {"V2", target, {x_range(Ck + 0.5, none), y_range(0.5, none)}, true};
    d.V[2] = {"V3", target, {x_range(Ck + 0.5, none), y_range(none, 0.5)}, true};
    return d;
}

SlabClass classify_odd(const Point3& p, const OddDecomposition& d) {
    SlabClass out;
    const SlabDomain& dom = *d.U[0].domain;
    if (!dom.torus.contains(p)) return out;
    if (dom.distance_to_sub_tori(p) < dom.sub_radius) {
        out.placement = SlabPlacement::SubTorus;
        return out;
    }
    for (const auto& r : d.U)
        if (r.satisfies_slabs(p)) out.regions.push_back(r.name);
    out.placement = out.regions.empty() ? SlabPlacement::Gap : SlabPlacement::Region;
    return out;
}

Cylindrical to_cylindrical(const Point3& p) { return {std::hypot(p.x, p.y), std::atan2(p.y, p.x), p.z}; }

Point3 from_cylindrical(const Cylindrical& c) { return {c.r * std::cos(c.theta), c.r * std::sin(c.theta), c.z}; }

Point3 winding_map(const Cylindrical& c, std::int64_t N) {
    if (N < 1) throw std::invalid_argument("winding_map: N must be positive");
    // Reduce the angle before scaling so large N keeps full precision.
    const double period = std::numbers::pi / static_cast<double>(N);
    const double reduced = std::remainder(c.theta, period);
    return from_cylindrical({c.r, 2.0 * static_cast<double>(N) * reduced, c.z});
}

Point3 winding_map(const Point3& p, std::int64_t N) { return winding_map(to_cylindrical(p), N); }

int ceil_log2(int g) {
    if (g < 1) throw std::invalid_argument("ceil_log2: g must be positive");
    int e = 0;
    while ((1 << e) < g) ++e;
    return e;
}

std::int64_t degree(int g, std::int64_t N) { return (std::int64_t{1} << (ceil_log2(g) + 2)) * N; }

double escape_radius_log2(int g, std::int64_t N) {
    if (N < 1) throw std::invalid_argument("escape_radius: N must be positive");
    const double C = make_sequence(g, N).total_width();
    const double exponent = 2.0 * std::sqrt(static_cast<double>(N)) * std::exp2(0.5 * ceil_log2(g));
    return exponent * std::log2(4.0 * C);
}

double escape_radius(int g, std::int64_t N) {
    const double e = escape_radius_log2(g, N);
    return e > 1023 ? std::numeric_limits<double>::infinity() : std::exp2(e);
}

double power_radius(double r, double n, double d) {
    if (r < 0) throw std::invalid_argument("power_radius: r must be non-negative");
    return std::pow(r, std::exp2(n / 2) * d);
}

namespace {

SimilarityQ translation(long x, long y, long z) {
    SimilarityQ s;
    s.translation = {Q(x), Q(y), Q(z)};
    return s;
}

bool same(const SimilarityQ& a, const SimilarityQ& b) {
    return a.scale == b.scale && a.rotation == b.rotation && a.translation == b.translation;
}

}  // namespace

SimilarityQ zorich_linear_part() {
    SimilarityQ A;
    const QSqrt2 h = QSqrt2::sqrt2() * Q(1, 2);
    A.scale = QSqrt2::sqrt2();
    A.rotation = {h, -h, Q(0), h, h, Q(0), Q(0), Q(0), Q(1)};
    return A;
}

Certificate check_conjugation(std::size_t samples, std::uint64_t seed) {
    const auto t0 = std::chrono::steady_clock::now();
    Certificate cert;
    cert.lemma = "conjugation";
    const SimilarityQ A = zorich_linear_part(), Ai = A.inverse();
    const SimilarityQ g1 = translation(1, 0, 0), g2 = translation(0, 1, 0);
    SimilarityQ g3;
    g3.rotation = {Q(-1), Q(0), Q(0), Q(0), Q(-1), Q(0), Q(0), Q(0), Q(1)};

    struct Identity {
        const char* name;
        SimilarityQ lhs, rhs;
    };
    const std::vector<Identity> ids{
        {"A g1 A^-1 = g2 g1", A.compose(g1).compose(Ai), g2.compose(g1)},
        {"A g2 A^-1 = g2 g1^-1", A.compose(g2).compose(Ai), g2.compose(g1.inverse())},
        {"A g3 A^-1 = g3", A.compose(g3).compose(Ai), g3},
    };
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num(-1000, 1000);
    std::size_t failures = 0;
    std::string first_failure;
    for (const auto& id : ids) {
        bool ok = same(id.lhs, id.rhs);
        for (std::size_t s = 0; s < samples && ok; ++s) {
            const ExactPoint3 p{Q(num(rng), 7), Q(num(rng), 11), Q(num(rng), 13) + QSqrt2::sqrt2() * Q(num(rng), 17)};
            ok = id.lhs.apply(p) == id.rhs.apply(p);
        }
        if (!ok) {
            ++failures;
            if (first_failure.empty()) first_failure = id.name;
        }
    }
    cert.stat("identities", static_cast<double>(ids.size()));
    cert.stat("random_points", static_cast<double>(samples));
    cert.stat("failures", static_cast<double>(failures));
    cert.status = failures == 0 ? Status::Pass : Status::Fail;
    cert.witness = {first_failure, "", static_cast<double>(failures), 0, failures ? "identity violated" : "all identities exact"};
    cert.margin = failures == 0 ? 0 : -1;
    cert.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return cert;
}

}  // namespace wildcantor
