#pragma once

#include "wildcantor/geometry.hpp"

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace wildcantor {

struct TriMesh {
    std::vector<Point3> vertices;
    std::vector<std::array<int, 3>> faces;

    long euler_characteristic() const;
    /// Every edge is used exactly twice, once in each direction.
    bool is_closed_oriented() const;
    double signed_volume() const;
};

/// Boundary mesh of a delta-metric tube whose core is a ladder of
/// axis-aligned rectangles in z = 0 placed side by side along x.
/// `resolution` is the number of steps across the tube cross-section and the
/// number of samples per unit length along the core. Throws
/// std::invalid_argument for resolution < 8, Euclidean tubes, cores that are
/// not such a ladder, or radii too large for the cells.
TriMesh mesh_tube(const TubeNeighborhood& t, int resolution);

/// Same surface with independent controls: `phi_steps` steps across the
/// cross-section and at least `samples_per_unit` vertices per unit of core
/// length. Used for certified sampling, where the vertex grid spacing matters.
TriMesh mesh_tube(const TubeNeighborhood& t, int phi_steps, double samples_per_unit);

TriMesh transform(const SimilarityD& s, const TriMesh& m);

void write_obj(std::ostream& os, const TriMesh& m, const char* object_name = nullptr);
/// Several meshes in one OBJ file, one `o` group per mesh.
void write_obj(std::ostream& os, const std::vector<TriMesh>& meshes, const std::vector<std::string>& names);

/// Streams named meshes into one OBJ file without holding them in memory.
class ObjWriter {
public:
    explicit ObjWriter(std::ostream& os);
    void add(const TriMesh& m, const std::string& name);

private:
    std::ostream& os_;
    long base_ = 1;
};

}  // namespace wildcantor
