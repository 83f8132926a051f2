#pragma once

#include "wildcantor/ifs.hpp"
#include "wildcantor/mesh.hpp"
#include "wildcantor/verify.hpp"

#include <json.hpp>

#include <ostream>
#include <string>

namespace wildcantor::io {

using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

/// Rounds to 12 significant digits so serialised output is stable; non-finite
/// values become strings.
Json number(double v);
Json point(const Point3& p);

Json seq_json(const FoldingSequence& s);
Json certificate_json(const Certificate& c);
Json curves_json(const Ladder& L);
/// Components of a level (word, scale, transformed core loops).
Json level_json(const IFS& ifs, int depth, const Word& prefix, std::uint64_t cap);

/// Serialised with a trailing newline; indent < 0 gives one compact line.
std::string dump(const Json& j, int indent = 2);

/// RFC 4180 style rows "row,col,value" with a header line.
void write_linking_csv(std::ostream& os, const LinkingMatrix& M);

/// `{what}_g{g}_N{N}_d{depth}.{ext}`.
std::string export_name(const std::string& what, int g, std::int64_t N, int depth, const std::string& ext);

/// Mesh of T^g used for exports.
TriMesh torus_mesh(const Ladder& L, int resolution = 16);

/// One named closed mesh per level component. Throws when a mesh is not
/// closed and consistently oriented.
void write_level_obj(std::ostream& os, const IFS& ifs, int depth, const Word& prefix, std::uint64_t cap, int resolution = 12);

}  // namespace wildcantor::io
