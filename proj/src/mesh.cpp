#include "wildcantor/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <numbers>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>

namespace wildcantor {

long TriMesh::euler_characteristic() const {
    std::set<std::pair<int, int>> edges;
    for (const auto& f : faces)
        for (int k = 0; k < 3; ++k) edges.insert(std::minmax(f[k], f[(k + 1) % 3]));
    return static_cast<long>(vertices.size()) - static_cast<long>(edges.size()) + static_cast<long>(faces.size());
}

bool TriMesh::is_closed_oriented() const {
    std::map<std::pair<int, int>, int> directed;
    for (const auto& f : faces)
        for (int k = 0; k < 3; ++k) {
            if (f[k] == f[(k + 1) % 3]) return false;
            if (++directed[{f[k], f[(k + 1) % 3]}] > 1) return false;
        }
    for (const auto& [e, n] : directed)
        if (!directed.count({e.second, e.first})) return false;
    return true;
}

double TriMesh::signed_volume() const {
    double v = 0;
    for (const auto& f : faces) v += dot(vertices[f[0]], cross(vertices[f[1]], vertices[f[2]]));
    return v / 6.0;
}

namespace {

struct LadderCore {
    std::vector<double> xs;  // x breakpoints X_0 < ... < X_g
    double y0 = 0, y1 = 0;
};

LadderCore recognise_ladder(const std::vector<PolyLoopD>& loops) {
    std::vector<std::array<double, 4>> rects;  // x0, x1, y0, y1
    for (const auto& L : loops) {
        if (L.size() != 4) throw std::invalid_argument("mesh_tube: core loops must be rectangles");
        double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
        for (const auto& v : L.vertices()) {
            if (v.z != 0) throw std::invalid_argument("mesh_tube: core must lie in z = 0");
            x0 = std::min(x0, v.x), x1 = std::max(x1, v.x), y0 = std::min(y0, v.y), y1 = std::max(y1, v.y);
        }
        for (const auto& v : L.vertices())
            if ((v.x != x0 && v.x != x1) || (v.y != y0 && v.y != y1))
                throw std::invalid_argument("mesh_tube: core loops must be axis-aligned rectangles");
        rects.push_back({x0, x1, y0, y1});
    }
    std::sort(rects.begin(), rects.end());
    LadderCore core;
    core.y0 = rects.front()[2];
    core.y1 = rects.front()[3];
    core.xs.push_back(rects.front()[0]);
    for (const auto& r : rects) {
        if (r[0] != core.xs.back() || r[2] != core.y0 || r[3] != core.y1)
            throw std::invalid_argument("mesh_tube: core rectangles must share full vertical edges");
        core.xs.push_back(r[1]);
    }
    return core;
}

// A closed curve of the zero-width slice, sampled along the core. Each sample
// carries the id of its core point, so ridge vertices can be shared.
struct Curve {
    std::vector<int> ids;
    // Position at half-width w: maps the w = 0 sample into the offset rectangle.
    double rx0, rx1, ry0, ry1;  // rectangle at w = 0
    int grow;                   // +1 outer (grows with w), -1 inner (shrinks)
};

}  // namespace

TriMesh mesh_tube(const TubeNeighborhood& t, int resolution) {
    if (resolution < 8) throw std::invalid_argument("mesh_tube: resolution must be >= 8");
    return mesh_tube(t, resolution, static_cast<double>(resolution));
}

TriMesh mesh_tube(const TubeNeighborhood& t, int phi_steps, double samples_per_unit) {
    if (phi_steps < 2 || !(samples_per_unit > 0)) throw std::invalid_argument("mesh_tube: bad sampling controls");
    if (t.metric != Metric::Delta) throw std::invalid_argument("mesh_tube: only delta-metric tubes are meshed");
    if (!(t.radius > 0)) throw std::invalid_argument("mesh_tube: degenerate radius");
    const LadderCore core = recognise_ladder(t.core);
    const double r = t.radius;
    const std::size_t g = core.xs.size() - 1;
    for (std::size_t k = 0; k < g; ++k)
        if (2 * r >= core.xs[k + 1] - core.xs[k] || 2 * r >= core.y1 - core.y0)
            throw std::invalid_argument("mesh_tube: radius too large for the core cells");

    // Core sample points: grid on each horizontal edge piece and vertical edge.
    std::map<std::pair<double, double>, int> core_id;
    std::vector<std::pair<double, double>> core_pts;
    auto id_of = [&](double x, double y) {
        auto [it, fresh] = core_id.try_emplace({x, y}, static_cast<int>(core_pts.size()));
        if (fresh) core_pts.push_back({x, y});
        return it->second;
    };
    auto samples = [&](double a, double b) {
        // Positions are computed from the lower end so both traversal
        // directions of an edge produce bit-identical points.
        const int n = std::max(2, static_cast<int>(std::ceil(std::abs(b - a) * samples_per_unit)));
        const double lo = std::min(a, b), hi = std::max(a, b);
        std::vector<double> grid;
        for (int k = 0; k <= n; ++k) grid.push_back(k == n ? hi : lo + (hi - lo) * k / n);
        if (a > b) std::reverse(grid.begin(), grid.end());
        grid.pop_back();
        return grid;  // excludes b
    };
    const double X0 = core.xs.front(), Xg = core.xs.back(), Y0 = core.y0, Y1 = core.y1;

    std::vector<Curve> curves;
    {
        // Outer boundary, counter-clockwise seen from +z.
        Curve c{{}, X0, Xg, Y0, Y1, +1};
        for (std::size_t k = 0; k < g; ++k)
            for (double x : samples(core.xs[k], core.xs[k + 1])) c.ids.push_back(id_of(x, Y0));
        for (double y : samples(Y0, Y1)) c.ids.push_back(id_of(Xg, y));
        for (std::size_t k = g; k > 0; --k)
            for (double x : samples(core.xs[k], core.xs[k - 1])) c.ids.push_back(id_of(x, Y1));
        for (double y : samples(Y1, Y0)) c.ids.push_back(id_of(X0, y));
        curves.push_back(std::move(c));
    }
    for (std::size_t k = 0; k < g; ++k) {
        // Cell boundaries, clockwise seen from +z.
        const double a = core.xs[k], b = core.xs[k + 1];
        Curve c{{}, a, b, Y0, Y1, -1};
        for (double x : samples(a, b)) c.ids.push_back(id_of(x, Y1));
        for (double y : samples(Y1, Y0)) c.ids.push_back(id_of(b, y));
        for (double x : samples(b, a)) c.ids.push_back(id_of(x, Y0));
        for (double y : samples(Y0, Y1)) c.ids.push_back(id_of(a, y));
        curves.push_back(std::move(c));
    }

    const int M = phi_steps;  // steps over phi in [0, pi]
    TriMesh mesh;
    std::map<std::tuple<int, int, int>, int> vid;  // (kind, a, b)
    auto ridge_vertex = [&](int row, int cid) {
        const int kind = row == 0 ? -1 : -2;
        auto [it, fresh] = vid.try_emplace({kind, cid, 0}, static_cast<int>(mesh.vertices.size()));
        if (fresh) mesh.vertices.push_back({core_pts[cid].first, core_pts[cid].second, row == 0 ? r : -r});
        return it->second;
    };
    for (std::size_t ci = 0; ci < curves.size(); ++ci) {
        const Curve& c = curves[ci];
        const int P = static_cast<int>(c.ids.size());
        std::vector<std::vector<int>> grid(static_cast<std::size_t>(M) + 1, std::vector<int>(static_cast<std::size_t>(P)));
        for (int row = 0; row <= M; ++row) {
            const double phi = std::numbers::pi * row / M;
            const double z = row == M ? -r : r * std::cos(phi);
            const double w = (row == 0 || row == M) ? 0.0 : r * std::sin(phi);
            const double gw = c.grow * w;
            const double nx0 = c.rx0 - gw, nx1 = c.rx1 + gw, ny0 = c.ry0 - gw, ny1 = c.ry1 + gw;
            for (int p = 0; p < P; ++p) {
                if (row == 0 || row == M) {
                    grid[row][p] = ridge_vertex(row, c.ids[p]);
                    continue;
                }
                const auto [x, y] = core_pts[c.ids[p]];
                const double px = nx0 + (x - c.rx0) * (nx1 - nx0) / (c.rx1 - c.rx0);
                const double py = ny0 + (y - c.ry0) * (ny1 - ny0) / (c.ry1 - c.ry0);
                grid[row][p] = static_cast<int>(mesh.vertices.size());
                mesh.vertices.push_back({px, py, z});
            }
        }
        for (int row = 0; row < M; ++row)
            for (int p = 0; p < P; ++p) {
                const int q = (p + 1) % P;
                const int a = grid[row][p], b = grid[row][q], cc = grid[row + 1][q], d = grid[row + 1][p];
                if (row == 0) {
                    mesh.faces.push_back({a, cc, d});
                    mesh.faces.push_back({a, b, cc});
                } else {
                    mesh.faces.push_back({a, b, d});
                    mesh.faces.push_back({b, cc, d});
                }
            }
    }
    if (mesh.signed_volume() < 0)
        for (auto& f : mesh.faces) std::swap(f[1], f[2]);
    return mesh;
}

TriMesh transform(const SimilarityD& s, const TriMesh& m) {
    TriMesh out = m;
    for (auto& v : out.vertices) v = s.apply(v);
    return out;
}

void write_obj(std::ostream& os, const TriMesh& m, const char* object_name) {
    write_obj(os, std::vector<TriMesh>{m}, {object_name ? object_name : "mesh"});
}

void write_obj(std::ostream& os, const std::vector<TriMesh>& meshes, const std::vector<std::string>& names) {
    ObjWriter w(os);
    for (std::size_t k = 0; k < meshes.size(); ++k) w.add(meshes[k], k < names.size() ? names[k] : "mesh" + std::to_string(k));
}

ObjWriter::ObjWriter(std::ostream& os) : os_(os) { os_ << std::setprecision(12); }

void ObjWriter::add(const TriMesh& m, const std::string& name) {
    os_ << "o " << name << '\n';
    for (const auto& v : m.vertices) os_ << "v " << v.x << ' ' << v.y << ' ' << v.z << '\n';
    for (const auto& f : m.faces) os_ << "f " << f[0] + base_ << ' ' << f[1] + base_ << ' ' << f[2] + base_ << '\n';
    base_ += static_cast<long>(m.vertices.size());
}

}  // namespace wildcantor
