#pragma once

#include <cstdint>
#include <vector>

namespace wildcantor {

/// Integer data driving the genus-g construction: the folding sequence a,
/// loop widths c, prefix sums C (C[0] = 0) and the scaffold density N.
struct FoldingSequence {
    int g = 0;
    std::vector<int> a;
    std::vector<int> c;
    std::vector<int> C;
    std::int64_t N = 0;

    /// Width sum C_g.
    int total_width() const { return C.back(); }
};

/// (a_{n,1}, ..., a_{n,n}). Throws std::invalid_argument for n == 0.
std::vector<int> folding_sequence(int n);

struct Widths {
    std::vector<int> c;
    std::vector<int> C;
};

/// c_i = 1 for a_i = 1 and 3 for a_i = 2; C holds prefix sums with C[0] = 0.
Widths widths_and_prefix_sums(const std::vector<int>& a);

/// Lower bound 48*sqrt(2)*(C_g + 6) as a double (for reporting only).
double scaffold_density_bound(int g);

/// True when N >= 48*sqrt(2)*(C_g + 6), decided exactly in integers.
bool meets_density_bound(std::int64_t N, int g);

/// Odd perfect square meeting the density bound.
bool is_admissible_density(std::int64_t N, int g);

/// Smallest odd perfect square meeting the density bound.
std::int64_t min_scaffold_density(int g);

/// Full sequence data for genus g. N = 0 selects min_scaffold_density(g).
FoldingSequence make_sequence(int g, std::int64_t N = 0);

}  // namespace wildcantor
