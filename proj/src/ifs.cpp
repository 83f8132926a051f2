#include "wildcantor/ifs.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace wildcantor {

std::string word_string(const Word& w) {
    std::ostringstream os;
    os << '(';
    for (std::size_t k = 0; k < w.size(); ++k) os << (k ? "," : "") << w[k];
    os << ')';
    return os.str();
}

Word kappa(const Word& w) {
    if (w.empty()) throw std::invalid_argument("kappa: empty word");
    return Word(w.begin(), w.end() - 1);
}

const SimilarityQ& IFS::phi(int letter) const {
    if (letter < 1 || static_cast<std::size_t>(letter) > m())
        throw std::out_of_range("IFS::phi: letter " + std::to_string(letter) + " outside 1.." + std::to_string(m()));
    return construction.copies[static_cast<std::size_t>(letter - 1)].map;
}

IFS build_ifs(int g, std::int64_t N, SlopeRule rule) {
    IFS ifs{construct(g, N, rule), {}};
    ifs.torus = build_torus(ifs.construction.ladder);
    return ifs;
}

SimilarityQ phi_of_word(const IFS& ifs, const Word& w) {
    SimilarityQ r = SimilarityQ::identity();
    for (int letter : w) r = r.compose(ifs.phi(letter));
    return r;
}

bool LevelComponent::contains(const TubeNeighborhood& base, const Point3& p) const {
    const Point3 q = to_double(map).inverse().apply(p);
    if (kind == ComponentKind::Ball) return norm(q) <= 1.0;
    return base.contains(q);
}

std::vector<PolyLoopD> LevelComponent::core(const TubeNeighborhood& base) const {
    std::vector<PolyLoopD> out;
    if (kind == ComponentKind::Ball) return out;
    const SimilarityD s = to_double(map);
    for (const auto& loop : base.core) out.push_back(transform(s, loop));
    return out;
}

LevelStream::LevelStream(const IFS& ifs, int n, Word prefix, std::uint64_t cap) : ifs_(&ifs), prefix_(std::move(prefix)) {
    if (n < 0) throw std::invalid_argument("LevelStream: negative level");
    if (prefix_.size() > static_cast<std::size_t>(n)) throw std::invalid_argument("LevelStream: prefix longer than the level");
    const std::size_t free = static_cast<std::size_t>(n) - prefix_.size();
    total_ = 1;
    for (std::size_t d = 0; d < free; ++d) {
        if (total_ > cap / ifs.m() + 1) throw LevelCapExceeded("LevelStream: level " + std::to_string(n) + " exceeds the cap");
        total_ *= ifs.m();
    }
    if (total_ > cap)
        throw LevelCapExceeded("LevelStream: " + std::to_string(total_) + " components exceed the cap of " + std::to_string(cap));
    suffix_.assign(free, 1);
    stack_.push_back(phi_of_word(ifs, prefix_));
    for (std::size_t d = 0; d < free; ++d) stack_.push_back(stack_.back().compose(ifs.phi(1)));
}

std::optional<LevelComponent> LevelStream::next() {
    if (emitted_ == total_) return std::nullopt;
    LevelComponent out{prefix_, stack_.back(), ComponentKind::Torus};
    out.word.insert(out.word.end(), suffix_.begin(), suffix_.end());
    ++emitted_;
    if (emitted_ < total_) {
        // Odometer step on the free letters, then rebuild the changed tail of the stack.
        std::size_t d = suffix_.size();
        while (d > 0 && static_cast<std::size_t>(suffix_[d - 1]) == ifs_->m()) suffix_[--d] = 1;
        ++suffix_[d - 1];
        for (std::size_t e = d - 1; e < suffix_.size(); ++e) stack_[e + 1] = stack_[e].compose(ifs_->phi(suffix_[e]));
    }
    return out;
}

int Address::letter(std::size_t k) const {
    if (k < prefix.size()) return prefix[k];
    if (tail.empty()) throw std::invalid_argument("Address: empty periodic tail");
    return tail[(k - prefix.size()) % tail.size()];
}

Word Address::head(std::size_t n) const {
    Word w(n);
    for (std::size_t k = 0; k < n; ++k) w[k] = letter(k);
    return w;
}

Address shift(const Address& a) {
    if (a.tail.empty()) throw std::invalid_argument("shift: empty periodic tail");
    Address r = a;
    if (!r.prefix.empty()) {
        r.prefix.erase(r.prefix.begin());
    } else {
        std::rotate(r.tail.begin(), r.tail.begin() + 1, r.tail.end());
    }
    return r;
}

AddressPoint point_from_address(const IFS& ifs, const Word& prefix, const Point3& anchor) {
    if (prefix.empty()) throw std::invalid_argument("point_from_address: empty prefix");
    SimilarityD s = SimilarityD::identity();
    for (int letter : prefix) s = s.compose(to_double(ifs.phi(letter)));
    return {s.apply(anchor), std::pow(ifs.alpha().to_double(), static_cast<double>(prefix.size())) * ifs.diameter()};
}

AddressPoint point_from_address(const IFS& ifs, const Address& a, std::size_t depth, const Point3& anchor) {
    return point_from_address(ifs, a.head(depth), anchor);
}

Point3 shift_point(const IFS& ifs, int letter, const Point3& p) { return to_double(ifs.phi(letter)).inverse().apply(p); }

namespace {

// Corners of an axis-aligned box containing T^g (the delta ball of radius r
// lies in the cube of half-side r).
std::vector<Point3> torus_box_corners(const Ladder& L) {
    const double r = kTorusRadius, C = static_cast<double>(L.width());
    std::vector<Point3> out;
    for (double x : {-r, C + r})
        for (double y : {-r, 1 + r})
            for (double z : {-r, r}) out.push_back({x, y, z});
    return out;
}

double image_excess(const SimilarityD& A, const std::vector<Point3>& corners, const Point3& centre, double radius) {
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& p : corners) worst = std::max(worst, distance(A.apply(p), centre) - radius);
    return worst;
}

}  // namespace

int SatelliteIFS::label(const Address& a) const {
    if (a.tail.empty()) throw std::invalid_argument("label: empty periodic tail");
    for (int letter : a.tail) {
        if (letter < 1 || static_cast<std::size_t>(letter) > m() + k()) throw std::out_of_range("label: letter outside alphabet");
        if (static_cast<std::size_t>(letter) > m()) return 0;
    }
    return base->construction.ladder.g;
}

std::vector<LevelComponent> SatelliteIFS::alternate_level1() const {
    std::vector<LevelComponent> out;
    for (std::size_t t = 1; t <= m(); ++t) out.push_back({{static_cast<int>(t)}, base->phi(static_cast<int>(t)), ComponentKind::Torus});
    for (std::size_t j = 0; j < k(); ++j) {
        SimilarityQ ball;
        ball.scale = QSqrt2::from_double(config.eps2);
        ball.translation = to_exact(config.u[j]);
        out.push_back({{static_cast<int>(m() + j + 1)}, ball, ComponentKind::Ball});
    }
    return out;
}

Point3 SatelliteIFS::point(const Address& a, std::size_t depth, const Point3& anchor) const {
    SimilarityD s = SimilarityD::identity();
    for (std::size_t d = 0; d < depth; ++d) {
        const int letter = a.letter(d);
        if (letter < 1 || static_cast<std::size_t>(letter) > xi.size()) throw std::out_of_range("SatelliteIFS::point: bad letter");
        s = s.compose(xi[static_cast<std::size_t>(letter - 1)]);
    }
    return s.apply(anchor);
}

SatelliteIFS build_satellite_ifs(const IFS& ifs, const SatelliteConfig& cfg) {
    const std::size_t m = ifs.m(), k = cfg.k();
    if (cfg.A.size() != k + 1) throw SatelliteConfigError("satellite config: expected A_0..A_k");
    if (!(cfg.eps1 > 0) || !(cfg.eps2 > 0)) throw SatelliteConfigError("satellite config: radii must be positive");
    if (!(cfg.eps2 < cfg.eps1 / 2)) throw SatelliteConfigError("satellite config: eps2 must be below eps1 / 2");
    for (const auto& A : cfg.A)
        if (!is_valid_similarity(A, 1e-9)) throw SatelliteConfigError("satellite config: A_j must be similarities");

    const auto& L = ifs.construction.ladder;
    const auto corners = torus_box_corners(L);
    auto sat_name = [&](std::size_t j) { return "xi_" + std::to_string(m + j + 1); };
    if (const double e = image_excess(cfg.A[0], corners, cfg.x, cfg.eps2); e > 0)
        throw SatelliteConfigError("satellite config: A_0(T) leaves B(x, eps2)", "A_0", "", -e);
    for (std::size_t j = 0; j < k; ++j) {
        const auto& A = cfg.A[j + 1];
        if (const double e = image_excess(A, corners, cfg.u[j], cfg.eps2); e > 0)
            throw SatelliteConfigError("satellite config: A_j(T) leaves B(u_j, eps2)", sat_name(j), "", -e);
        if (A.scale * cfg.eps2 + distance(A.apply(cfg.u[j]), cfg.u[j]) > cfg.eps2)
            throw SatelliteConfigError("satellite config: A_j does not map B(u_j, eps2) into itself", sat_name(j));
    }

    SatelliteIFS out;
    out.base = &ifs;
    out.config = cfg;
    for (std::size_t t = 1; t <= m; ++t) out.xi.push_back(to_double(ifs.phi(static_cast<int>(t))));
    for (std::size_t j = 0; j < k; ++j) out.xi.push_back(cfg.A[j + 1]);

    // Satellite images lie in their balls and torus images lie within
    // sqrt(2) * alpha * r of their cores, so these gaps bound the true ones.
    double best = std::numeric_limits<double>::infinity();
    const double img_r = std::sqrt(2.0) * L.alpha_d() * kTorusRadius;
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b) {
            const double sep = distance(cfg.u[a], cfg.u[b]) - 2 * cfg.eps2;
            if (!(sep > 0)) throw SatelliteConfigError("satellite config: satellite balls overlap", sat_name(a), sat_name(b), sep);
            best = std::min(best, sep);
        }
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t t = 0; t < m; ++t) {
            double d = std::numeric_limits<double>::infinity();
            for (const auto& loop : ifs.construction.copies[t].loops_d) d = std::min(d, euclid_point_to_polyloop(cfg.u[j], loop));
            const double sep = d - img_r - cfg.eps2;
            if (!(sep > 0))
                throw SatelliteConfigError("satellite config: satellite ball meets a torus image", sat_name(j),
                                           "xi_" + std::to_string(t + 1), sep);
            best = std::min(best, sep);
        }
    out.min_separation = best;
    return out;
}

}  // namespace wildcantor
