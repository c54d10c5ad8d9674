// Composite per-vertex error quadrics: inverse-area-weighted base planes,
// a curvature-scaled dual-plane boundary penalty, and a tangent-plane
// normal penalty.
#pragma once

#include "faqem/mesh.hpp"
#include "faqem/quadric.hpp"
#include "faqem/topology.hpp"

namespace faqem {

struct WeightSet {
    double w_area = 100.0;
    double w_boundary = 500.0;
    double w_uv = 5000.0;
    double w_normal = 0.01;
    double w_plane_area = 1.0;

    // Table-stakes defaults used for every run unless overridden.
    static WeightSet standard() { return WeightSet{}; }
    // Plain quadric-error configuration: no feature terms, uniform plane
    // weighting, no seam penalty.
    static WeightSet zero() { return WeightSet{0.0, 0.0, 0.0, 0.0, 0.0}; }
};

// Discrete curvature of a boundary chain v2 - v1 - v3 from first and
// second differences:
//   kappa = |d' x d''| / |d'|^3,  d' = v3 - v2,  d'' = v3 - 2 v1 + v2.
// Returns 0 when |d'| <= degenerate_length.
double boundary_curvature(const Vec3& v1, const Vec3& v2, const Vec3& v3,
                          double degenerate_length = 0.0);

// Curvature-scaled penalty built from two planes through v1: one
// orthogonal to the chain triangle (raw normal, not normalized) and one
// facing along the boundary edge direction. Zero when kappa is 0.
Quadric boundary_quadric(const Vec3& v1, const Vec3& v2, const Vec3& v3, double w_boundary,
                         double degenerate_length = 0.0);

// Tangent-plane penalty w_normal * p p^T for the plane through v with unit
// normal n. The normal is renormalized if needed; a zero normal or zero
// weight yields the zero quadric.
Quadric normal_quadric(const Vec3& v, const Vec3& n, double w_normal);

// Sum of face-plane quadrics over v's incident faces. With
// w_plane_area > 0 each term is divided by (w_plane_area * face area);
// otherwise terms are summed uniformly. Faces with area <= face_area_tol
// are skipped; if every incident face is skipped the result is the zero
// quadric and *all_degenerate (when given) is set.
Quadric base_quadric(const Mesh& mesh, const Adjacency& adj, int v, double w_plane_area,
                     double face_area_tol = 0.0, bool* all_degenerate = nullptr);

// Area-weighted average of incident face normals; zero when undefined.
Vec3 vertex_normal_estimate(const Mesh& mesh, const Adjacency& adj, int v);

// Composite quadric: base + boundary (only for vertices with exactly two
// boundary-chain neighbors) + normal. The normal comes from the mesh when
// present, otherwise from the incident-face average.
Quadric gf_quadric(const Mesh& mesh, const Adjacency& adj, const EdgeClassification& classes,
                   int v, const WeightSet& weights, double degenerate_length = 0.0,
                   double face_area_tol = 0.0);

}  // namespace faqem
