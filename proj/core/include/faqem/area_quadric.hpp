// Boundary-area preservation quadric. Evaluating the per-edge term at a
// candidate position v' gives half the squared norm of the area vector
// swept between the boundary edge (vr, vs) and v':
//   eval(v') = 0.5 * |(vs - vr) x v' + vr x vs|^2
// which vanishes exactly when v' is collinear with the edge. Summing over
// the boundary edges incident to a collapsing edge's endpoints penalizes
// collapses that shrink or distort an open rim.
#pragma once

#include "faqem/mesh.hpp"
#include "faqem/quadric.hpp"
#include "faqem/topology.hpp"

namespace faqem {

// Quadric for one boundary edge. Symmetric in (vr, vs).
Quadric area_edge_quadric(const Vec3& vr, const Vec3& vs);

// Sum of per-edge quadrics over all boundary edges (single incident face)
// touching either endpoint of edge (i, j); each undirected boundary edge
// contributes once. Zero when neither endpoint sits on a boundary.
Quadric area_quadric(const Mesh& mesh, const Adjacency& adj, const EdgeClassification& classes,
                     int i, int j);

}  // namespace faqem
