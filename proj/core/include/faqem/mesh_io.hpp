// Mesh file I/O: OBJ (v/vt/vn/f, MTL diffuse map) and PLY (ascii or
// binary little-endian, positions + faces + optional vertex colors).
// Loading welds near-duplicate vertices and drops faces degenerated by
// the weld.
#pragma once

#include <string>

#include "faqem/mesh.hpp"

namespace faqem {

struct WeldStats {
    int merged_vertices = 0;
    int dropped_faces = 0;
};

// Merges all vertex pairs strictly closer than `tolerance` (union-find
// over a uniform grid), rewrites faces to the surviving indices, and
// drops faces left with a repeated index. The lowest-index member of each
// cluster survives with its original position. No-op when tolerance <= 0.
WeldStats weld_vertices(Mesh& mesh, double tolerance);

// Reads an OBJ or PLY file (by extension), welds at `weld_tolerance`, and
// validates the result. Parse failures throw std::runtime_error naming
// the file and line.
Mesh load_mesh(const std::string& path, double weld_tolerance = 1e-6,
               WeldStats* stats = nullptr);

// Writes OBJ or PLY by extension. OBJ output emits an MTL file and PNG
// atlas alongside when the mesh carries a texture; PLY output embeds
// per-vertex colors when present.
void save_mesh(const Mesh& mesh, const std::string& path);

// Internal format entry points, exposed for targeted tests.
Mesh load_obj(const std::string& path);
void save_obj(const Mesh& mesh, const std::string& path);
Mesh load_ply(const std::string& path);
void save_ply(const Mesh& mesh, const std::string& path);

}  // namespace faqem
