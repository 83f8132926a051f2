#include "wildcantor/mesh.hpp"
#include "wildcantor/parallel.hpp"
#include "wildcantor/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <set>

namespace wildcantor {

int LinkingMatrix::at(std::size_t a, std::size_t b, int k, int kk) const {
    if (a > b) std::swap(a, b), std::swap(k, kk);
    const auto it = entries.find({a, b, k, kk});
    return it == entries.end() ? 0 : it->second;
}

std::vector<std::tuple<std::size_t, std::size_t, int>> LinkingMatrix::triples() const {
    std::vector<std::tuple<std::size_t, std::size_t, int>> out;
    for (const auto& [key, v] : entries) {
        if (v == 0) continue;
        const auto [a, b, k, kk] = key;
        out.emplace_back(a * static_cast<std::size_t>(g) + static_cast<std::size_t>(k),
                         b * static_cast<std::size_t>(g) + static_cast<std::size_t>(kk), v);
    }
    return out;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) { return std::chrono::duration<double, std::milli>(Clock::now() - t0).count(); }

Certificate make_cert(const Construction& c, const char* lemma) {
    Certificate cert;
    cert.lemma = lemma;
    cert.g = c.ladder.g;
    cert.N = c.ladder.N();
    cert.figure_mode = !is_admissible_density(cert.N, cert.g);
    return cert;
}

std::array<double, 4> copy_box(const LadderCopy& cp) {
    std::array<double, 4> b{1e300, -1e300, 1e300, -1e300};
    for (const auto& L : cp.loops_d)
        for (const auto& p : L.vertices()) {
            b[0] = std::min(b[0], p.x), b[1] = std::max(b[1], p.x);
            b[2] = std::min(b[2], p.y), b[3] = std::max(b[3], p.y);
        }
    return b;
}

double loops_distance(const PolyLoopD& A, const PolyLoopD& B) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < B.size(); ++j) best = std::min(best, segment_distance2(A.edge(i), B.edge(j)));
    return std::sqrt(best);
}

// Deterministic index sampling without replacement.
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, std::mt19937_64& rng) {
    std::vector<std::size_t> idx(n);
    for (std::size_t t = 0; t < n; ++t) idx[t] = t;
    k = std::min(k, n);
    for (std::size_t t = 0; t < k; ++t) std::swap(idx[t], idx[t + rng() % (n - t)]);
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
}

// Full g x g linking block of one copy pair.
struct Block {
    std::vector<int> lk;       // row-major g x g
    std::vector<double> gauss;
    bool touching = false;
    double worst_oracle_gap = 0;
};

Block link_block(const LadderCopy& A, const LadderCopy& B) {
    const std::size_t g = A.loops.size();
    Block blk;
    blk.lk.assign(g * g, 0);
    blk.gauss.assign(g * g, 0);
    for (std::size_t k = 0; k < g; ++k)
        for (std::size_t kk = 0; kk < g; ++kk) {
            if (loops_distance(A.loops_d[k], B.loops_d[kk]) < 1e-12) {
                // Possibly touching: decide exactly.
                bool touch = false;
                for (std::size_t e = 0; e < A.loops[k].size() && !touch; ++e)
                    for (std::size_t f = 0; f < B.loops[kk].size() && !touch; ++f)
                        touch = segment_distance2(A.loops[k].edge(e), B.loops[kk].edge(f)).sign() == 0;
                if (touch) {
                    blk.touching = true;
                    continue;
                }
            }
            const int v = linking_number_crossings(A.loops[k], B.loops[kk], nullptr, true);
            const double gs = gauss_linking_integral(A.loops_d[k], B.loops_d[kk]);
            blk.lk[k * g + kk] = v;
            blk.gauss[k * g + kk] = gs;
            blk.worst_oracle_gap = std::max(blk.worst_oracle_gap, std::abs(gs - v));
        }
    return blk;
}

enum class Linkage { Complete, Unlinked, Partial, Touching };

Linkage classify(const Block& b, std::size_t g) {
    if (b.touching) return Linkage::Touching;
    bool zero = true, complete = true;
    for (std::size_t k = 0; k < g; ++k)
        for (std::size_t kk = 0; kk < g; ++kk) {
            const int v = b.lk[k * g + kk];
            if (v != 0) zero = false;
            if (k == kk ? std::abs(v) != 1 : v != 0) complete = false;
        }
    if (zero) return Linkage::Unlinked;
    return complete ? Linkage::Complete : Linkage::Partial;
}

const char* linkage_name(Linkage l) {
    switch (l) {
        case Linkage::Complete: return "completely linked";
        case Linkage::Unlinked: return "unlinked";
        case Linkage::Partial: return "linked but not completely";
        case Linkage::Touching: return "curves touch";
    }
    return "";
}

struct PairOutcome {
    std::size_t a, b;
    bool predicate;
    Linkage linkage;
    Block block;
};

std::vector<PairOutcome> evaluate_pairs(const Construction& c, const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                                        int jobs) {
    auto parts = parallel_chunks<std::vector<PairOutcome>>(pairs.size(), jobs, [&](std::size_t b, std::size_t e, std::size_t) {
        std::vector<PairOutcome> out;
        for (std::size_t k = b; k < e; ++k) {
            const auto [x, y] = pairs[k];
            PairOutcome o{x, y, sigma_predicate(c, x, y), Linkage::Unlinked, link_block(c.copies[x], c.copies[y])};
            o.linkage = classify(o.block, static_cast<std::size_t>(c.ladder.g));
            out.push_back(std::move(o));
        }
        return out;
    });
    std::vector<PairOutcome> all;
    for (auto& p : parts) std::move(p.begin(), p.end(), std::back_inserter(all));
    return all;
}

// Pairs whose planar bounding boxes overlap; all others have disjoint convex
// hulls and therefore zero linking.
std::vector<std::pair<std::size_t, std::size_t>> overlapping_copy_pairs(const Construction& c) {
    std::vector<std::array<double, 4>> boxes;
    for (const auto& cp : c.copies) boxes.push_back(copy_box(cp));
    return near_pairs(boxes, 1e-12);
}

}  // namespace

std::pair<Certificate, LinkingMatrix> certify_linking(const Construction& c, const LinkingPlan& plan, const VerifyOptions& opt) {
    const auto t0 = Clock::now();
    Certificate cert = make_cert(c, "linking");
    const std::size_t m = c.m();
    const std::size_t g = static_cast<std::size_t>(c.ladder.g);

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::size_t inferred_zero = 0;
    if (plan.full) {
        pairs = overlapping_copy_pairs(c);
        inferred_zero = m * (m - 1) / 2 - pairs.size();
    } else {
        std::mt19937_64 rng(opt.seed);
        std::vector<std::pair<std::size_t, std::size_t>> adj, near, other;
        for (const auto& pr : overlapping_copy_pairs(c))
            (sigma_predicate(c, pr.first, pr.second) ? adj : near).push_back(pr);
        for (auto t : sample_indices(adj.size(), plan.adjacent, rng)) pairs.push_back(adj[t]);
        const std::size_t half = plan.nonadjacent / 2;
        for (auto t : sample_indices(near.size(), half, rng)) pairs.push_back(near[t]);
        std::set<std::pair<std::size_t, std::size_t>> chosen(pairs.begin(), pairs.end());
        for (std::size_t guard = 0; pairs.size() < plan.adjacent + plan.nonadjacent && guard < 100 * plan.nonadjacent + 100; ++guard) {
            std::size_t a = rng() % m, b = rng() % m;
            if (a == b) continue;
            if (a > b) std::swap(a, b);
            if (sigma_predicate(c, a, b) || !chosen.insert({a, b}).second) continue;
            pairs.emplace_back(a, b);
        }
    }

    const auto outcomes = evaluate_pairs(c, pairs, opt.jobs);
    LinkingMatrix M;
    M.m = m;
    M.g = c.ladder.g;
    std::size_t adjacent_ok = 0, adjacent_total = 0, disjoint_ok = 0, disjoint_total = 0, touching = 0, out_of_range = 0;
    double worst_gap = 0;
    const PairOutcome* first_bad = nullptr;
    for (const auto& o : outcomes) {
        for (std::size_t k = 0; k < g; ++k)
            for (std::size_t kk = 0; kk < g; ++kk) {
                const int v = o.block.lk[k * g + kk];
                if (v != 0) M.entries[{o.a, o.b, static_cast<int>(k), static_cast<int>(kk)}] = v;
                if (std::abs(v) > 1) ++out_of_range;
            }
        worst_gap = std::max(worst_gap, o.block.worst_oracle_gap);
        touching += o.linkage == Linkage::Touching;
        bool ok;
        if (o.predicate) {
            ++adjacent_total;
            ok = o.linkage == Linkage::Complete;
            adjacent_ok += ok;
        } else {
            ++disjoint_total;
            ok = o.linkage == Linkage::Unlinked;
            disjoint_ok += ok;
        }
        if (!ok && !first_bad) first_bad = &o;
    }
    cert.stat("pairs_computed", static_cast<double>(outcomes.size()));
    cert.stat("pairs_zero_by_hull_separation", static_cast<double>(inferred_zero));
    cert.stat("intersecting_sigma_pairs", static_cast<double>(adjacent_total));
    cert.stat("completely_linked", static_cast<double>(adjacent_ok));
    cert.stat("disjoint_sigma_pairs", static_cast<double>(disjoint_total));
    cert.stat("unlinked", static_cast<double>(disjoint_ok));
    cert.stat("touching_pairs", static_cast<double>(touching));
    cert.stat("entries_outside_unit_range", static_cast<double>(out_of_range));
    cert.stat("max_gauss_crossing_gap", worst_gap);
    const bool oracle_ok = worst_gap <= 0.25;
    if (!oracle_ok) cert.notes.push_back("signed crossings and Gauss integral disagree by more than 0.25");
    if (first_bad || !oracle_ok || out_of_range) {
        cert.status = Status::Fail;
        if (first_bad) {
            std::string desc = linkage_name(first_bad->linkage);
            desc += first_bad->predicate ? " (sigmas intersect)" : " (sigmas disjoint)";
            cert.witness = {c.label(first_bad->a), c.label(first_bad->b), 0, 0, desc};
        }
        cert.margin = -1;
    } else {
        cert.status = Status::Pass;
        cert.witness = {"", "", worst_gap, 0.25, "largest oracle gap"};
        cert.margin = 0.25 - worst_gap;
    }
    cert.elapsed_ms = ms_since(t0);
    return {cert, M};
}

Certificate certify_nesting(const Construction& c, const VerifyOptions& opt) {
    const auto t0 = Clock::now();
    Certificate cert = make_cert(c, "nesting");
    const Ladder& L = c.ladder;
    const double h = opt.sample_step;
    const double r = kTorusRadius;
    const double alpha = L.alpha_d();

    // (a) Containment by certified sampling of each image of the boundary.
    const double rho = h / alpha;                 // covering radius in model units
    const double lip_u = 1.0 + 2.0 * r;           // shortest core side has length 1
    const double lip_phi = std::sqrt(2.0) * r;
    const int phi_steps = std::max(2, static_cast<int>(std::ceil(std::numbers::pi * lip_phi / rho)));
    const double density = lip_u / rho;
    const TriMesh samples = mesh_tube(build_torus(L), phi_steps, density);
    const auto& pts = samples.vertices;

    struct Partial {
        double worst = -1;
        std::size_t arg = 0;
        std::size_t outside = 0, marginal = 0;
    };
    const double limit = r - h;
    auto parts = parallel_chunks<Partial>(c.m(), opt.jobs, [&](std::size_t b, std::size_t e, std::size_t) {
        Partial p;
        for (std::size_t t = b; t < e; ++t) {
            const SimilarityD phi = to_double(c.copies[t].map);
            const int i = c.copies[t].i;
            for (const auto& s : pts) {
                const Point3 q = phi.apply(s);
                double d = std::numeric_limits<double>::infinity();
                for (int k = std::max(1, i - 1); k <= std::min(L.g, i + 1); ++k)
                    d = std::min(d, delta_point_to_polyloop(q, L.loops_d[static_cast<std::size_t>(k - 1)]));
                if (d > limit) {
                    for (const auto& loop : L.loops_d) d = std::min(d, delta_point_to_polyloop(q, loop));
                    if (d > r + 1e-12) ++p.outside;
                    else if (d > limit) ++p.marginal;
                }
                if (d > p.worst) p.worst = d, p.arg = t;
            }
        }
        return p;
    });
    Partial tot;
    for (const auto& p : parts) {
        tot.outside += p.outside, tot.marginal += p.marginal;
        if (p.worst > tot.worst) tot.worst = p.worst, tot.arg = p.arg;
    }
    cert.stat("sample_step", h);
    cert.stat("samples_per_image", static_cast<double>(pts.size()));
    cert.stat("images", static_cast<double>(c.m()));
    cert.stat("max_delta_to_core", tot.worst);
    cert.stat("containment_limit", limit);
    cert.stat("samples_outside", static_cast<double>(tot.outside));
    cert.stat("samples_within_step_of_boundary", static_cast<double>(tot.marginal));

    // (b) Disjointness: each image lies within sqrt(2) * alpha * r of its core.
    const double img_r = std::sqrt(2.0) * alpha * r;
    std::vector<std::array<double, 4>> boxes;
    for (const auto& cp : c.copies) boxes.push_back(copy_box(cp));
    const auto pairs = near_pairs(boxes, img_r * (1 + 1e-9));
    double min_sep = std::numeric_limits<double>::infinity();
    std::pair<std::size_t, std::size_t> sep_pair{0, 0};
    {
        struct P2 {
            double s = std::numeric_limits<double>::infinity();
            std::pair<std::size_t, std::size_t> pr{0, 0};
        };
        auto parts2 = parallel_chunks<P2>(pairs.size(), opt.jobs, [&](std::size_t b, std::size_t e, std::size_t) {
            P2 p;
            for (std::size_t k = b; k < e; ++k) {
                const auto [x, y] = pairs[k];
                double d = std::numeric_limits<double>::infinity();
                for (const auto& A : c.copies[x].loops_d)
                    for (const auto& B : c.copies[y].loops_d) d = std::min(d, loops_distance(A, B));
                if (d - 2 * img_r < p.s) p.s = d - 2 * img_r, p.pr = {x, y};
            }
            return p;
        });
        for (const auto& p : parts2)
            if (p.s < min_sep) min_sep = p.s, sep_pair = p.pr;
    }
    cert.stat("disjointness_pairs_examined", static_cast<double>(pairs.size()));
    cert.stat("min_certified_separation", min_sep);

    const bool contain_fail = tot.outside > 0;
    const bool contain_inconclusive = tot.marginal > 0;
    const bool sep_fail = min_sep <= -2 * img_r + 1e-15;  // cores touch
    const bool sep_inconclusive = !(min_sep > 0);
    if (contain_fail || sep_fail) cert.status = Status::Fail;
    else if (contain_inconclusive || sep_inconclusive) cert.status = Status::Inconclusive;
    else cert.status = Status::Pass;

    if (contain_fail || contain_inconclusive || !(sep_fail || sep_inconclusive)) {
        cert.witness = {c.label(tot.arg), "", tot.worst, limit,
                        contain_fail ? "image sample outside the torus"
                                     : (contain_inconclusive ? "image sample within one step of the boundary" : "deepest image sample")};
    } else {
        cert.witness = {c.label(sep_pair.first), c.label(sep_pair.second), min_sep, 0,
                        sep_fail ? "image cores touch" : "separation lower bound not positive"};
    }
    cert.margin = std::min(limit - tot.worst, min_sep);
    cert.elapsed_ms = ms_since(t0);
    return cert;
}

Certificate genus_structure_certificate(const Construction& c, int depth, const VerifyOptions& opt) {
    const auto t0 = Clock::now();
    Certificate cert = make_cert(c, "genus-structure");
    if (depth < 1 || depth > 2) throw std::invalid_argument("genus_structure_certificate: depth must be 1 or 2");
    const Ladder& L = c.ladder;
    const std::size_t g = static_cast<std::size_t>(L.g);

    // (a) Chains: completely linked exactly along the scaffold adjacency.
    const auto pairs = overlapping_copy_pairs(c);
    const auto outcomes = evaluate_pairs(c, pairs, opt.jobs);
    std::size_t mismatched = 0;
    const PairOutcome* bad = nullptr;
    std::vector<std::vector<std::size_t>> nbr(c.m());
    std::map<std::pair<std::size_t, std::size_t>, const PairOutcome*> by_pair;
    for (const auto& o : outcomes) {
        by_pair[{o.a, o.b}] = &o;
        const bool ok = o.predicate ? o.linkage == Linkage::Complete : o.linkage == Linkage::Unlinked;
        if (!ok) {
            ++mismatched;
            if (!bad) bad = &o;
        }
        if (o.linkage == Linkage::Complete && c.copies[o.a].i == c.copies[o.b].i) {
            nbr[o.a].push_back(o.b);
            nbr[o.b].push_back(o.a);
        }
    }
    // Each loop's children must form one cycle through all of them.
    std::size_t broken_chains = 0;
    for (int i = 1; i <= L.g; ++i) {
        const std::size_t first = c.scaffold.index(i, 1), n = c.scaffold.loop_size(static_cast<std::size_t>(i));
        bool ok = true;
        for (std::size_t t = first; t < first + n; ++t) ok = ok && nbr[t].size() == 2;
        if (ok) {
            std::size_t prev = first, cur = nbr[first][0], steps = 1;
            while (cur != first && steps <= n) {
                const std::size_t nxt = nbr[cur][0] == prev ? nbr[cur][1] : nbr[cur][0];
                prev = cur, cur = nxt, ++steps;
            }
            ok = cur == first && steps == n;
        }
        broken_chains += !ok;
    }
    cert.stat("pairs_computed", static_cast<double>(outcomes.size()));
    cert.stat("linkage_mismatches", static_cast<double>(mismatched));
    cert.stat("broken_chains", static_cast<double>(broken_chains));

    // (b) Planar filling disks: every child core loop is planar.
    std::size_t nonplanar = 0;
    for (const auto& cp : c.copies)
        for (const auto& loop : cp.loops) {
            const auto& v = loop.vertices();
            for (std::size_t k = 3; k < v.size(); ++k)
                if (dot(cross(v[1] - v[0], v[2] - v[0]), v[k] - v[0]).sign() != 0) ++nonplanar;
        }
    cert.stat("nonplanar_child_loops", static_cast<double>(nonplanar));

    // (c) The children trace the parent core: every core vertex is close to a child.
    const double prox = (8.0 * L.width() + 6) * std::sqrt(2.0) / (5.0 * static_cast<double>(L.N()));
    double worst_vertex = 0;
    for (const auto& loop : L.loops_d)
        for (const auto& v : loop.vertices()) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& cp : c.copies)
                for (const auto& cl : cp.loops_d) best = std::min(best, euclid_point_to_polyloop(v, cl));
            worst_vertex = std::max(worst_vertex, best);
        }
    cert.stat("max_core_vertex_to_child", worst_vertex);
    cert.stat("proximity_bound", prox);

    // Depth 2: the subtree under letter 1 is the depth-1 picture moved by phi_1.
    std::size_t transport_mismatch = 0, relinked = 0, relink_diff = 0;
    if (depth == 2) {
        const SimilarityQ& phi1 = c.copies[0].map;
        std::vector<std::vector<PolyLoopQ>> sub(c.m());
        for (std::size_t t = 0; t < c.m(); ++t) {
            const SimilarityQ w = phi1.compose(c.copies[t].map);
            for (std::size_t k = 0; k < g; ++k) {
                sub[t].push_back(transform(w, L.loops[k]));
                if (sub[t].back().vertices() != transform(phi1, c.copies[t].loops[k]).vertices()) ++transport_mismatch;
            }
        }
        std::mt19937_64 rng(opt.seed);
        const std::size_t budget = static_cast<std::size_t>(std::max<std::int64_t>(1, std::min<std::int64_t>(opt.pair_budget, 200)));
        for (auto idx : sample_indices(outcomes.size(), budget, rng)) {
            const auto& o = outcomes[idx];
            if (o.linkage == Linkage::Touching) continue;
            for (std::size_t k = 0; k < g; ++k)
                for (std::size_t kk = 0; kk < g; ++kk) {
                    ++relinked;
                    if (linking_number_crossings(sub[o.a][k], sub[o.b][kk], nullptr, true) != o.block.lk[k * g + kk]) ++relink_diff;
                }
        }
        cert.stat("depth2_transport_mismatches", static_cast<double>(transport_mismatch));
        cert.stat("depth2_linking_recomputed", static_cast<double>(relinked));
        cert.stat("depth2_linking_differences", static_cast<double>(relink_diff));
    }

    const bool ok = mismatched == 0 && broken_chains == 0 && nonplanar == 0 && worst_vertex <= prox &&
                    transport_mismatch == 0 && relink_diff == 0;
    cert.status = ok ? Status::Pass : Status::Fail;
    if (bad)
        cert.witness = {c.label(bad->a), c.label(bad->b), 0, 0,
                        std::string(linkage_name(bad->linkage)) + (bad->predicate ? " (sigmas intersect)" : " (sigmas disjoint)")};
    else
        cert.witness = {"", "", worst_vertex, prox, "farthest parent core vertex from the children"};
    cert.margin = ok ? prox - worst_vertex : -1;
    cert.elapsed_ms = ms_since(t0);
    return cert;
}

}  // namespace wildcantor
