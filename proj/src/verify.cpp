#include "wildcantor/verify.hpp"

#include "wildcantor/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace wildcantor {

const char* to_string(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Inconclusive: return "inconclusive";
        case Status::NotApplicable: return "not-applicable";
    }
    return "unknown";
}

double Certificate::stat_value(const std::string& key) const {
    for (const auto& [k, v] : stats)
        if (k == key) return v;
    throw std::out_of_range("Certificate: no stat " + key);
}

std::string Construction::label(std::size_t t) const {
    std::ostringstream os;
    os << '(' << copies[t].i << ',' << copies[t].j << ')';
    return os.str();
}

Construction construct(int g, std::int64_t N, SlopeRule rule) {
    Construction c;
    c.ladder = build_ladder(g, N);
    c.scaffold = build_scaffold(c.ladder, rule);
    c.copies = build_copies(c.ladder, c.scaffold);
    return c;
}

bool sigma_predicate(const Construction& c, std::size_t a, std::size_t b) {
    const auto& A = c.scaffold.segments[a].anchor;
    const auto& B = c.scaffold.segments[b].anchor;
    if (A.i == B.i) {
        const long n = static_cast<long>(c.scaffold.loop_size(static_cast<std::size_t>(A.i)));
        const long d = ((A.j - B.j) % n + n) % n;
        return d == 0 || d == 1 || d == n - 1;
    }
    return std::abs(A.i - B.i) == 1 && A.point == B.point;
}

std::vector<std::pair<std::size_t, std::size_t>> near_pairs(const std::vector<std::array<double, 4>>& boxes, double grow) {
    // Uniform grid hashing on grown boxes; cell size from the largest box.
    double cell = 0;
    for (const auto& b : boxes) cell = std::max({cell, b[1] - b[0] + 2 * grow, b[3] - b[2] + 2 * grow});
    if (!(cell > 0)) cell = 1;
    std::map<std::pair<long, long>, std::vector<std::size_t>> grid;
    for (std::size_t t = 0; t < boxes.size(); ++t) {
        const auto& b = boxes[t];
        const long x0 = static_cast<long>(std::floor((b[0] - grow) / cell)), x1 = static_cast<long>(std::floor((b[1] + grow) / cell));
        const long y0 = static_cast<long>(std::floor((b[2] - grow) / cell)), y1 = static_cast<long>(std::floor((b[3] + grow) / cell));
        for (long x = x0; x <= x1; ++x)
            for (long y = y0; y <= y1; ++y) grid[{x, y}].push_back(t);
    }
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (const auto& [key, items] : grid)
        for (std::size_t u = 0; u < items.size(); ++u)
            for (std::size_t v = u + 1; v < items.size(); ++v) {
                const auto& a = boxes[items[u]];
                const auto& b = boxes[items[v]];
                if (a[1] + grow < b[0] - grow || b[1] + grow < a[0] - grow) continue;
                if (a[3] + grow < b[2] - grow || b[3] + grow < a[2] - grow) continue;
                out.emplace_back(std::min(items[u], items[v]), std::max(items[u], items[v]));
            }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Certificate make_cert(const Construction& c, const char* lemma) {
    Certificate cert;
    cert.lemma = lemma;
    cert.g = c.ladder.g;
    cert.N = c.ladder.N();
    cert.figure_mode = !is_admissible_density(cert.N, cert.g);
    return cert;
}

std::array<double, 4> xy_box(const std::vector<Point3>& pts) {
    std::array<double, 4> b{1e300, -1e300, 1e300, -1e300};
    for (const auto& p : pts) {
        b[0] = std::min(b[0], p.x), b[1] = std::max(b[1], p.x);
        b[2] = std::min(b[2], p.y), b[3] = std::max(b[3], p.y);
    }
    return b;
}

std::array<double, 4> copy_box(const LadderCopy& cp) {
    std::vector<Point3> pts;
    for (const auto& L : cp.loops_d)
        for (const auto& v : L.vertices()) pts.push_back(v);
    return xy_box(pts);
}

// Orientation filter: doubles decide unless a value is within the error margin.
constexpr double kOrientEps = 1e-12;

double orient_d(const Point3& a, const Point3& b, const Point3& c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

bool filtered_intersect(const ExactSegment3& a, const ExactSegment3& b, const Segment3& da, const Segment3& db) {
    const double o1 = orient_d(da.p, da.q, db.p), o2 = orient_d(da.p, da.q, db.q);
    const double o3 = orient_d(db.p, db.q, da.p), o4 = orient_d(db.p, db.q, da.q);
    if (std::min({std::abs(o1), std::abs(o2), std::abs(o3), std::abs(o4)}) > kOrientEps)
        return o1 * o2 < 0 && o3 * o4 < 0;
    return segment_intersect(a, b);
}

// Compares a distance with a bound; doubles decide outside a relative band,
// exact Q(sqrt 2) arithmetic decides inside it. Returns sign(d^2 - bound^2).
template <class ExactD2>
int filtered_compare(double d, double bound, const QSqrt2& bound2, ExactD2 exact_d2) {
    if (std::abs(d - bound) > 1e-9 * bound + 1e-13) return d > bound ? 1 : -1;
    return (exact_d2() - bound2).sign();
}

double copies_distance(const LadderCopy& A, const LadderCopy& B) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& la : A.loops_d)
        for (std::size_t i = 0; i < la.size(); ++i)
            for (const auto& lb : B.loops_d)
                for (std::size_t j = 0; j < lb.size(); ++j) best = std::min(best, segment_distance2(la.edge(i), lb.edge(j)));
    return std::sqrt(best);
}

QSqrt2 copies_distance2_exact(const LadderCopy& A, const LadderCopy& B) {
    QSqrt2 best;
    bool first = true;
    for (const auto& la : A.loops)
        for (std::size_t i = 0; i < la.size(); ++i)
            for (const auto& lb : B.loops)
                for (std::size_t j = 0; j < lb.size(); ++j) {
                    QSqrt2 d = segment_distance2(la.edge(i), lb.edge(j));
                    if (first || d < best) best = std::move(d), first = false;
                }
    return best;
}

}  // namespace

Certificate certify_sigma_dichotomy(const Construction& c, const VerifyOptions& opt) {
    const auto t0 = Clock::now();
    Certificate cert = make_cert(c, "sigma-dichotomy");
    const std::int64_t N = c.ladder.N();
    const double bound = std::sqrt(2.0) / (5.0 * static_cast<double>(N));
    const QSqrt2 bound2 = QSqrt2::rational(2, 25 * N * N);
    const auto& segs = c.scaffold.segments;
    const std::size_t m = segs.size();

    std::vector<Segment3> dsegs;
    std::vector<std::array<double, 4>> boxes;
    for (const auto& s : segs) {
        dsegs.push_back(to_double(s.segment));
        boxes.push_back(xy_box({dsegs.back().p, dsegs.back().q}));
    }
    auto pairs = near_pairs(boxes, 0.5 * bound * (1 + 1e-9));
    // Predicate-positive pairs are always examined, near or not.
    for (std::size_t a = 0; a < m; ++a) {
        const auto& A = segs[a].anchor;
        const std::size_t next = c.scaffold.index(A.i, A.j == static_cast<int>(c.scaffold.loop_size(A.i)) ? 1 : A.j + 1);
        pairs.emplace_back(std::min(a, next), std::max(a, next));
    }
    {
        std::map<std::pair<std::string, std::string>, std::vector<std::size_t>> by_point;
        for (std::size_t a = 0; a < m; ++a)
            by_point[{segs[a].anchor.point.x.str(), segs[a].anchor.point.y.str()}].push_back(a);
        for (const auto& [k, v] : by_point)
            for (std::size_t u = 0; u < v.size(); ++u)
                for (std::size_t w = u + 1; w < v.size(); ++w) pairs.emplace_back(std::min(v[u], v[w]), std::max(v[u], v[w]));
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

    struct Partial {
        std::size_t mismatches = 0, too_close = 0, exact_calls = 0;
        double min_disjoint = std::numeric_limits<double>::infinity();
        std::pair<std::size_t, std::size_t> min_pair{0, 0};
        bool have_bad = false;
        std::pair<std::size_t, std::size_t> bad{0, 0};
        double bad_dist = 0;
        std::string bad_note;
    };
    auto parts = parallel_chunks<Partial>(pairs.size(), opt.jobs, [&](std::size_t b, std::size_t e, std::size_t) {
        Partial p;
        for (std::size_t k = b; k < e; ++k) {
            const auto [x, y] = pairs[k];
            const bool inter = filtered_intersect(segs[x].segment, segs[y].segment, dsegs[x], dsegs[y]);
            const bool pred = sigma_predicate(c, x, y);
            const double d = inter ? 0.0 : segment_distance(dsegs[x], dsegs[y]);
            if (inter != pred) {
                ++p.mismatches;
                if (!p.have_bad) {
                    p.have_bad = true, p.bad = {x, y}, p.bad_dist = d;
                    p.bad_note = inter ? "segments intersect but the predicate is false" : "predicate holds but segments are disjoint";
                }
            }
            if (!inter) {
                if (d < p.min_disjoint) p.min_disjoint = d, p.min_pair = {x, y};
                const int cmp = filtered_compare(d, bound, bound2, [&] {
                    ++p.exact_calls;
                    return segment_distance2(segs[x].segment, segs[y].segment);
                });
                if (cmp < 0) {
                    ++p.too_close;
                    if (!p.have_bad) p.have_bad = true, p.bad = {x, y}, p.bad_dist = d, p.bad_note = "disjoint pair closer than the bound";
                }
            }
        }
        return p;
    });
    Partial tot;
    for (const auto& p : parts) {
        tot.mismatches += p.mismatches, tot.too_close += p.too_close, tot.exact_calls += p.exact_calls;
        if (p.min_disjoint < tot.min_disjoint) tot.min_disjoint = p.min_disjoint, tot.min_pair = p.min_pair;
        if (p.have_bad && !tot.have_bad) tot.have_bad = true, tot.bad = p.bad, tot.bad_dist = p.bad_dist, tot.bad_note = p.bad_note;
    }
    const double total_pairs = 0.5 * static_cast<double>(m) * static_cast<double>(m - 1);
    cert.stat("pairs_total", total_pairs);
    cert.stat("pairs_examined", static_cast<double>(pairs.size()));
    cert.stat("pairs_pruned", total_pairs - static_cast<double>(pairs.size()));
    cert.stat("dichotomy_mismatches", static_cast<double>(tot.mismatches));
    cert.stat("disjoint_pairs_below_bound", static_cast<double>(tot.too_close));
    cert.stat("exact_distance_evaluations", static_cast<double>(tot.exact_calls));
    cert.stat("min_disjoint_distance", tot.min_disjoint);
    cert.stat("bound", bound);
    if (tot.have_bad) {
        cert.status = Status::Fail;
        cert.witness = {c.label(tot.bad.first), c.label(tot.bad.second), tot.bad_dist, bound, tot.bad_note};
        cert.margin = std::min(tot.min_disjoint, tot.bad_dist) - bound;
    } else {
        cert.status = Status::Pass;
        cert.witness = {c.label(tot.min_pair.first), c.label(tot.min_pair.second), tot.min_disjoint, bound,
                        "closest disjoint pair"};
        cert.margin = tot.min_disjoint - bound;
    }
    cert.elapsed_ms = ms_since(t0);
    return cert;
}

Certificate certify_tau_separation(const Construction& c, const VerifyOptions& opt) {
    const auto t0 = Clock::now();
    Certificate cert = make_cert(c, "tau-separation");
    const std::int64_t N = c.ladder.N();
    const double bound = 3.0 / (10.0 * static_cast<double>(N));
    const QSqrt2 bound2 = QSqrt2::rational(9, 100 * N * N);
    std::vector<std::array<double, 4>> boxes;
    for (const auto& cp : c.copies) boxes.push_back(copy_box(cp));
    const auto pairs = near_pairs(boxes, 0.5 * bound * (1 + 1e-9));

    struct Partial {
        double min_d = std::numeric_limits<double>::infinity();
        std::pair<std::size_t, std::size_t> min_pair{0, 0};
        std::size_t below = 0, exact_calls = 0;
        bool have_bad = false;
        std::pair<std::size_t, std::size_t> bad{0, 0};
        double bad_d = 0;
    };
    auto parts = parallel_chunks<Partial>(pairs.size(), opt.jobs, [&](std::size_t b, std::size_t e, std::size_t) {
        Partial p;
        for (std::size_t k = b; k < e; ++k) {
            const auto [x, y] = pairs[k];
            const double d = copies_distance(c.copies[x], c.copies[y]);
            if (d < p.min_d) p.min_d = d, p.min_pair = {x, y};
            const int cmp = filtered_compare(d, bound, bound2, [&] {
                ++p.exact_calls;
                return copies_distance2_exact(c.copies[x], c.copies[y]);
            });
            if (cmp < 0) {
                ++p.below;
                if (!p.have_bad || d < p.bad_d) p.have_bad = true, p.bad = {x, y}, p.bad_d = d;
            }
        }
        return p;
    });
    Partial tot;
    for (const auto& p : parts) {
        tot.below += p.below, tot.exact_calls += p.exact_calls;
        if (p.min_d < tot.min_d) tot.min_d = p.min_d, tot.min_pair = p.min_pair;
        if (p.have_bad && (!tot.have_bad || p.bad_d < tot.bad_d)) tot.have_bad = true, tot.bad = p.bad, tot.bad_d = p.bad_d;
    }
    const double m = static_cast<double>(c.m());
    cert.stat("pairs_total", 0.5 * m * (m - 1));
    cert.stat("pairs_examined", static_cast<double>(pairs.size()));
    cert.stat("pairs_below_bound", static_cast<double>(tot.below));
    cert.stat("exact_distance_evaluations", static_cast<double>(tot.exact_calls));
    cert.stat("min_distance", tot.min_d);
    cert.stat("bound", bound);
    const auto w = tot.have_bad ? tot.bad : tot.min_pair;
    cert.status = tot.have_bad ? Status::Fail : Status::Pass;
    cert.witness = {c.label(w.first), c.label(w.second), tot.min_d, bound,
                    tot.have_bad ? (tot.min_d == 0 ? "curves intersect" : "pair closer than the bound") : "closest pair"};
    cert.margin = tot.min_d - bound;
    cert.elapsed_ms = ms_since(t0);
    return cert;
}

Certificate certify_tau_proximity(const Construction& c, const VerifyOptions& opt) {
    const auto t0 = Clock::now();
    Certificate cert = make_cert(c, "tau-proximity");
    const std::int64_t N = c.ladder.N();
    const long k = 8L * c.ladder.width() + 6;
    const double bound = static_cast<double>(k) * std::sqrt(2.0) / (5.0 * static_cast<double>(N));
    const QSqrt2 bound2 = QSqrt2::rational(2 * k * k, 25 * N * N);

    struct Partial {
        double max_d = 0;
        std::size_t arg = 0, over = 0, exact_calls = 0;
    };
    auto parts = parallel_chunks<Partial>(c.m(), opt.jobs, [&](std::size_t b, std::size_t e, std::size_t) {
        Partial p;
        for (std::size_t t = b; t < e; ++t) {
            const auto& cp = c.copies[t];
            const auto& gi = c.ladder.loops_d[static_cast<std::size_t>(cp.i - 1)];
            const auto& gq = c.ladder.loops[static_cast<std::size_t>(cp.i - 1)];
            for (std::size_t l = 0; l < cp.loops.size(); ++l)
                for (std::size_t v = 0; v < cp.loops[l].size(); ++v) {
                    const double d = euclid_point_to_polyloop(cp.loops_d[l][v], gi);
                    if (d > p.max_d) p.max_d = d, p.arg = t;
                    const int cmp = filtered_compare(d, bound, bound2, [&] {
                        ++p.exact_calls;
                        QSqrt2 best = point_segment_distance2(cp.loops[l][v], gq.edge(0));
                        for (std::size_t e2 = 1; e2 < gq.size(); ++e2) {
                            QSqrt2 dd = point_segment_distance2(cp.loops[l][v], gq.edge(e2));
                            if (dd < best) best = dd;
                        }
                        return best;
                    });
                    if (cmp > 0) ++p.over;
                }
        }
        return p;
    });
    Partial tot;
    for (const auto& p : parts) {
        tot.over += p.over, tot.exact_calls += p.exact_calls;
        if (p.max_d > tot.max_d) tot.max_d = p.max_d, tot.arg = p.arg;
    }
    cert.stat("copies", static_cast<double>(c.m()));
    cert.stat("vertices_over_bound", static_cast<double>(tot.over));
    cert.stat("exact_distance_evaluations", static_cast<double>(tot.exact_calls));
    cert.stat("max_distance", tot.max_d);
    cert.stat("bound", bound);
    cert.status = tot.over ? Status::Fail : Status::Pass;
    cert.witness = {c.label(tot.arg), "", tot.max_d, bound, "farthest copy vertex from its loop"};
    cert.margin = bound - tot.max_d;
    cert.elapsed_ms = ms_since(t0);
    return cert;
}

}  // namespace wildcantor
