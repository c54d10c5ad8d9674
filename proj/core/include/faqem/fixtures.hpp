// Procedural test meshes: closed solids, open sheets, boundary-heavy
// shapes, non-manifold configurations, multi-component scenes, and
// textured planes. Deterministic, so tests and the bundled benchmark set
// are reproducible.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "faqem/mesh.hpp"

namespace faqem {
namespace fixtures {

// Axis-aligned unit cube: 8 vertices, 12 triangles.
Mesh cube();

// Regular tetrahedron (closed, 4 faces).
Mesh tetrahedron();

// cells x cells unit-square grid in the z = 0 plane (2 * cells^2 faces),
// optionally with a single continuous UV chart.
Mesh grid(int cells, bool with_uvs = false);

// Grid folded into a sharp ridge along its middle.
Mesh creased_grid(int cells, double ridge_height = 0.3);

// Unit sphere from subdividing an icosahedron `subdivisions` times:
// 20 * 4^n faces.
Mesh icosphere(int subdivisions);

// Unit sphere with rings x segments x 2 faces; hits arbitrary face budgets.
Mesh latlong_sphere(int rings, int segments);

// Unit disk in z = 0: a center fan plus annular rings,
// segments * (2 * rings - 1) faces.
Mesh disk(int rings, int segments);

// Disk whose rim radius is modulated by waves * sin.
Mesh wavy_disk(int rings, int segments, int waves = 6, double amplitude = 0.2);

// Three triangles sharing one edge (5 vertices); the shared edge is
// incident to 3 faces.
Mesh nonmanifold_fan();

// Three two-triangle wings sharing one edge: 6 faces, still non-manifold
// along the spine.
Mesh nonmanifold_wings();

// Three triangles meeting at a single shared vertex, which therefore has
// six incident boundary edges.
Mesh boundary_junction();

// Unit cube with each side tessellated into a subdiv x subdiv grid and
// shared side edges welded; subdiv = 1 gives the plain 12-face cube.
Mesh subdivided_cube(int subdiv);

// Two unit cubes separated by `gap` along x (one mesh, two components).
// Sides are tessellated so facing triangles across a small gap have
// nearby centroids.
Mesh two_cubes(double gap, int subdiv = 8);

// Grid with one UV chart and a horizontal gradient texture attached.
Mesh textured_gradient_plane(int cells, int texture_size = 256);

// Cube with each of the 6 quad sides mapped to its own UV chart.
Mesh cube_six_charts();

// Icosphere with deterministic radial noise (scan-like surface).
Mesh noisy_sphere(int subdivisions, double amplitude, uint64_t seed);

// Grid with deterministic height noise (scan-like terrain sheet).
Mesh noisy_grid(int cells, double amplitude, uint64_t seed);

// Horizontal black-to-white gradient image.
TextureImage gradient_texture(int width, int height);

// Writes the bundled benchmark fixture set (OBJ + PNG where textured)
// into `dir` and returns the written mesh paths in manifest order.
std::vector<std::string> write_fixture_set(const std::string& dir);

}  // namespace fixtures
}  // namespace faqem
