#include "wildcantor/sequences.hpp"

#include <gmpxx.h>

#include <cmath>
#include <map>
#include <stdexcept>

namespace wildcantor {

namespace {

using Memo = std::map<int, std::vector<int>>;

const std::vector<int>& folding_rec(int n, Memo& memo) {
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(n));
    if (n == 1) {
        out.push_back(1);
    } else if (n % 2 == 0) {
        const int m = n / 2;
        const std::vector<int> half = folding_rec(m, memo);
        out.insert(out.end(), half.begin(), half.end());
        out.insert(out.end(), half.rbegin(), half.rend());
    } else {
        const int m = n / 2;
        const std::vector<int> half = folding_rec(m + 1, memo);
        out.insert(out.end(), half.begin(), half.begin() + m);
        out.push_back(2 * half[static_cast<std::size_t>(m)]);
        for (int k = m - 1; k >= 0; --k) out.push_back(half[static_cast<std::size_t>(k)]);
    }
    return memo.emplace(n, std::move(out)).first->second;
}

}  // namespace

std::vector<int> folding_sequence(int n) {
    if (n < 1) throw std::invalid_argument("folding_sequence: n must be >= 1");
    Memo memo;
    return folding_rec(n, memo);
}

Widths widths_and_prefix_sums(const std::vector<int>& a) {
    Widths w;
    w.C.push_back(0);
    for (int v : a) {
        if (v != 1 && v != 2) throw std::invalid_argument("widths_and_prefix_sums: entries must be 1 or 2");
        const int c = v == 1 ? 1 : 3;
        w.c.push_back(c);
        w.C.push_back(w.C.back() + c);
    }
    return w;
}

double scaffold_density_bound(int g) {
    const auto w = widths_and_prefix_sums(folding_sequence(g));
    return 48.0 * std::sqrt(2.0) * (w.C.back() + 6);
}

bool meets_density_bound(std::int64_t N, int g) {
    if (N <= 0) return false;
    const auto w = widths_and_prefix_sums(folding_sequence(g));
    const mpz_class k = w.C.back() + 6;
    const mpz_class n = static_cast<long>(N);
    // N >= 48 sqrt(2) K  <=>  N^2 >= 2 * 48^2 * K^2 for positive N.
    return n * n >= mpz_class(4608) * k * k;
}

bool is_admissible_density(std::int64_t N, int g) {
    if (N <= 0 || N % 2 == 0) return false;
    const mpz_class n = static_cast<long>(N);
    return mpz_perfect_square_p(n.get_mpz_t()) != 0 && meets_density_bound(N, g);
}

std::int64_t min_scaffold_density(int g) {
    if (g < 1) throw std::invalid_argument("min_scaffold_density: g must be >= 1");
    for (std::int64_t r = 1;; r += 2) {
        if (meets_density_bound(r * r, g)) return r * r;
    }
}

FoldingSequence make_sequence(int g, std::int64_t N) {
    if (g < 1) throw std::invalid_argument("genus must be >= 1");
    FoldingSequence s;
    s.g = g;
    s.a = folding_sequence(g);
    auto w = widths_and_prefix_sums(s.a);
    s.c = std::move(w.c);
    s.C = std::move(w.C);
    s.N = N == 0 ? min_scaffold_density(g) : N;
    if (s.N < 1) throw std::invalid_argument("N must be positive");
    return s;
}

}  // namespace wildcantor
