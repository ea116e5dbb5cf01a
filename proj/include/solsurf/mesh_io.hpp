#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "solsurf/immersion.hpp"

namespace solsurf {

/// Valid vertices in row-major order and the triangles of the grid quads whose
/// corners are all valid. Indices are 0-based into `vertices`.
struct TriMesh {
    std::vector<LorentzVec> vertices;
    std::vector<std::array<int, 3>> faces;
    bool lorentzian = false;
};

TriMesh triangulate(const SurfacePatch& patch);

/// "v x1 x2 x3" lines, 1-based triangle faces; H3 vertices are followed by a "# x0 ..." line.
void write_obj(const TriMesh& mesh, std::ostream& os);
/// ASCII PLY; H3 meshes carry an extra x0 vertex property.
void write_ply(const TriMesh& mesh, std::ostream& os);

enum class MeshFormat { Obj, Ply };

/// From the file extension (.obj / .ply, case-insensitive); InvalidArgument otherwise.
MeshFormat mesh_format_for(const std::filesystem::path& path);
void write_mesh(const SurfacePatch& patch, const std::filesystem::path& path);

}  // namespace solsurf
