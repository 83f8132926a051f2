#include "wildcantor/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace wildcantor::io {

Json number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    const double r = std::strtod(buf, nullptr);
    return r == 0 ? 0.0 : r;  // drop negative zero
}

Json point(const Point3& p) { return Json::array({number(p.x), number(p.y), number(p.z)}); }

Json seq_json(const FoldingSequence& s) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["genus"] = s.g;
    j["a"] = s.a;
    j["c"] = s.c;
    j["C"] = std::vector<int>(s.C.begin() + 1, s.C.end());
    j["N"] = s.N;
    j["density_bound"] = number(scaffold_density_bound(s.g));
    j["figure_mode"] = !is_admissible_density(s.N, s.g);
    return j;
}

Json certificate_json(const Certificate& c) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["lemma"] = c.lemma;
    j["genus"] = c.g;
    j["N"] = c.N;
    j["figure_mode"] = c.figure_mode;
    if (c.figure_mode) j["mode_label"] = "FIGURE MODE: N below the scaffold density bound, bounds are not expected to hold";
    j["status"] = to_string(c.status);
    j["witness"] = {{"first", c.witness.first},
                    {"second", c.witness.second},
                    {"achieved", number(c.witness.achieved)},
                    {"required", number(c.witness.required)},
                    {"note", c.witness.note}};
    j["margin"] = number(c.margin);
    Json stats = Json::object();
    for (const auto& [k, v] : c.stats) stats[k] = number(v);
    j["stats"] = stats;
    j["notes"] = c.notes;
    j["elapsed_ms"] = number(c.elapsed_ms);
    return j;
}

Json curves_json(const Ladder& L) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["genus"] = L.g;
    j["N"] = L.N();
    Json loops = Json::array();
    for (const auto& loop : L.loops_d) {
        Json v = Json::array();
        for (const auto& p : loop.vertices()) v.push_back(point(p));
        loops.push_back(v);
    }
    j["loops"] = loops;
    return j;
}

Json level_json(const IFS& ifs, int depth, const Word& prefix, std::uint64_t cap) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["genus"] = ifs.construction.ladder.g;
    j["N"] = ifs.construction.ladder.N();
    j["depth"] = depth;
    j["prefix"] = prefix;
    Json comps = Json::array();
    LevelStream stream(ifs, depth, prefix, cap);
    while (auto c = stream.next()) {
        Json cj;
        cj["word"] = c->word;
        cj["scale"] = number(c->map.scale.to_double());
        Json loops = Json::array();
        for (const auto& loop : c->core(ifs.torus)) {
            Json v = Json::array();
            for (const auto& p : loop.vertices()) v.push_back(point(p));
            loops.push_back(v);
        }
        cj["core"] = loops;
        comps.push_back(cj);
    }
    j["components"] = comps;
    return j;
}

std::string dump(const Json& j, int indent) { return j.dump(indent) + "\n"; }

void write_linking_csv(std::ostream& os, const LinkingMatrix& M) {
    os << "row,col,value\r\n";
    for (const auto& [r, c, v] : M.triples()) os << r << ',' << c << ',' << v << "\r\n";
}

std::string export_name(const std::string& what, int g, std::int64_t N, int depth, const std::string& ext) {
    return what + "_g" + std::to_string(g) + "_N" + std::to_string(N) + "_d" + std::to_string(depth) + "." + ext;
}

TriMesh torus_mesh(const Ladder& L, int resolution) { return mesh_tube(build_torus(L), resolution); }

void write_level_obj(std::ostream& os, const IFS& ifs, int depth, const Word& prefix, std::uint64_t cap, int resolution) {
    const TriMesh base = torus_mesh(ifs.construction.ladder, resolution);
    if (!base.is_closed_oriented()) throw std::runtime_error("write_level_obj: torus mesh is not watertight");
    LevelStream stream(ifs, depth, prefix, cap);
    ObjWriter w(os);
    while (auto c = stream.next()) {
        std::string name = "w";
        for (int letter : c->word) name += "_" + std::to_string(letter);
        w.add(transform(to_double(c->map), base), name);
    }
}

}  // namespace wildcantor::io
