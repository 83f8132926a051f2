#pragma once

#include "wildcantor/verify.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wildcantor {

/// Finite word over {1..m} (or {1..m+k} with satellites). Empty is allowed.
using Word = std::vector<int>;

std::string word_string(const Word& w);

/// Forgetful map: drops the last letter.
Word kappa(const Word& w);

/// The iterated function system {phi_1..phi_m} of a construction, with
/// letter t standing for the copy at flat index t - 1.
struct IFS {
    Construction construction;
    TubeNeighborhood torus;

    std::size_t m() const { return construction.m(); }
    const SimilarityQ& phi(int letter) const;
    QSqrt2 alpha() const { return construction.ladder.alpha(); }
    double diameter() const { return construction.ladder.torus_diameter(); }
};

IFS build_ifs(int g, std::int64_t N = 0, SlopeRule rule = SlopeRule::Alternating);

/// phi_w = phi_{w_1} o ... o phi_{w_n}; the identity for the empty word.
SimilarityQ phi_of_word(const IFS& ifs, const Word& w);

enum class ComponentKind { Torus, Ball };

/// One component of a level of the defining sequence.
struct LevelComponent {
    Word word;
    SimilarityQ map;
    ComponentKind kind = ComponentKind::Torus;

    /// Torus: base.contains(map^{-1}(p)). Ball: map^{-1}(p) lies in the unit ball.
    bool contains(const TubeNeighborhood& base, const Point3& p) const;
    /// Images of the base core loops.
    std::vector<PolyLoopD> core(const TubeNeighborhood& base) const;
};

struct LevelCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Lazy enumeration of the level-n components below a prefix, in
/// lexicographic word order. Construction throws LevelCapExceeded when the
/// stream would yield more than `cap` components.
class LevelStream {
public:
    LevelStream(const IFS& ifs, int n, Word prefix = {}, std::uint64_t cap = 100000);

    std::optional<LevelComponent> next();
    std::uint64_t size() const { return total_; }

private:
    const IFS* ifs_;
    Word prefix_;
    std::vector<int> suffix_;
    std::vector<SimilarityQ> stack_;  ///< stack_[d] = phi of prefix + first d suffix letters
    std::uint64_t total_ = 0, emitted_ = 0;
};

/// Infinite address: a finite prefix followed by a periodic tail.
struct Address {
    Word prefix;
    Word tail;  ///< repeated forever, non-empty

    int letter(std::size_t k) const;  ///< 0-based
    Word head(std::size_t n) const;   ///< first n letters
    bool operator==(const Address&) const = default;
};

/// Drops the first letter and normalises the result.
Address shift(const Address& a);

struct AddressPoint {
    Point3 point;
    double error = 0;  ///< the attractor point lies within this distance
};

/// phi_prefix(anchor) and the bound alpha^|prefix| * diam(T^g).
AddressPoint point_from_address(const IFS& ifs, const Word& prefix, const Point3& anchor);
AddressPoint point_from_address(const IFS& ifs, const Address& a, std::size_t depth, const Point3& anchor);

/// The dynamics on the attractor near phi_j(T^g): p -> phi_j^{-1}(p).
Point3 shift_point(const IFS& ifs, int letter, const Point3& p);

/// Satellite balls B(u_k, eps2) added to the first level, with the maps
/// A_0 (into B(x, eps2)) and A_1..A_k (into B(u_k, eps2)).
struct SatelliteConfig {
    std::vector<Point3> u;
    double eps2 = 0;
    Point3 x{0, 0, 0};
    double eps1 = 0;
    std::vector<SimilarityD> A;  ///< A_0..A_k

    std::size_t k() const { return u.size(); }
};

struct SatelliteConfigError : std::runtime_error {
    std::string first, second;
    double separation = 0;
    SatelliteConfigError(const std::string& what, std::string a = {}, std::string b = {}, double sep = 0)
        : std::runtime_error(what), first(std::move(a)), second(std::move(b)), separation(sep) {}
};

struct SatelliteIFS {
    const IFS* base = nullptr;
    SatelliteConfig config;
    std::vector<SimilarityD> xi;  ///< xi_1..xi_{m+k}
    double min_separation = 0;    ///< smallest gap between level-1 images

    std::size_t m() const { return base->m(); }
    std::size_t k() const { return config.k(); }
    /// Local genus label: 0 when the periodic tail visits a satellite letter.
    int label(const Address& a) const;
    /// First level of the alternate defining sequence: the m tori followed by
    /// the k balls, each the image of the unit ball under its map.
    std::vector<LevelComponent> alternate_level1() const;
    Point3 point(const Address& a, std::size_t depth, const Point3& anchor) const;
};

/// Validates the configuration and builds the extended system. Throws
/// SatelliteConfigError naming the offending pair.
SatelliteIFS build_satellite_ifs(const IFS& ifs, const SatelliteConfig& cfg);

}  // namespace wildcantor
