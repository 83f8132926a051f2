#pragma once

#include "wildcantor/ladder.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace wildcantor {

enum class Status { Pass, Fail, Inconclusive, NotApplicable };

const char* to_string(Status s);

struct Witness {
    std::string first;   ///< e.g. "(1,24)"
    std::string second;  ///< e.g. "(2,99)", empty when not a pair
    double achieved = 0;
    double required = 0;
    std::string note;
};

/// Machine-readable outcome of one certificate run.
struct Certificate {
    std::string lemma;
    int g = 0;
    std::int64_t N = 0;
    bool figure_mode = false;  ///< N below the admissible density N_g
    Status status = Status::NotApplicable;
    Witness witness;
    double margin = 0;  ///< signed distance from the requirement; >= 0 on pass
    double elapsed_ms = 0;
    std::vector<std::pair<std::string, double>> stats;
    std::vector<std::string> notes;

    bool passed() const { return status == Status::Pass; }
    void stat(const std::string& key, double v) { stats.emplace_back(key, v); }
    double stat_value(const std::string& key) const;
};

struct VerifyOptions {
    int jobs = 1;
    double sample_step = 1e-4;       ///< certified sampling step h (model units)
    std::int64_t pair_budget = 100000;
    std::uint64_t seed = 20240611;
    SlopeRule rule = SlopeRule::Alternating;
};

/// Ladder, scaffold and level-1 copies for one (g, N).
struct Construction {
    Ladder ladder;
    Scaffold scaffold;
    std::vector<LadderCopy> copies;

    std::size_t m() const { return copies.size(); }
    std::string label(std::size_t t) const;  ///< "(i,j)"
};

Construction construct(int g, std::int64_t N = 0, SlopeRule rule = SlopeRule::Alternating);

/// Intersection predicate on two flat scaffold indices: adjacent anchors or identical shared-edge anchors.
bool sigma_predicate(const Construction& c, std::size_t a, std::size_t b);

/// Candidate pairs a < b whose xy bounding boxes, each grown by `grow`,
/// overlap. Every other pair is farther apart than 2 * grow in the plane.
std::vector<std::pair<std::size_t, std::size_t>> near_pairs(const std::vector<std::array<double, 4>>& boxes, double grow);

Certificate certify_sigma_dichotomy(const Construction& c, const VerifyOptions& opt = {});
Certificate certify_tau_separation(const Construction& c, const VerifyOptions& opt = {});
Certificate certify_tau_proximity(const Construction& c, const VerifyOptions& opt = {});

/// Sparse loop-level linking numbers: key (a, b, k, k') with a < b.
struct LinkingMatrix {
    std::size_t m = 0;
    int g = 0;
    std::map<std::tuple<std::size_t, std::size_t, int, int>, int> entries;

    int at(std::size_t a, std::size_t b, int k, int kk) const;
    /// Nonzero entries as (row, col, value) with row = a * g + k (0-based).
    std::vector<std::tuple<std::size_t, std::size_t, int>> triples() const;
};

struct LinkingPlan {
    bool full = true;             ///< all pairs; otherwise sampled
    std::size_t adjacent = 500;   ///< sampled pairs with intersecting sigmas
    std::size_t nonadjacent = 500;
};

std::pair<Certificate, LinkingMatrix> certify_linking(const Construction& c, const LinkingPlan& plan,
                                                      const VerifyOptions& opt = {});

Certificate certify_nesting(const Construction& c, const VerifyOptions& opt = {});

Certificate genus_structure_certificate(const Construction& c, int depth, const VerifyOptions& opt = {});

}  // namespace wildcantor
