// Total collapse cost for one edge: the composite-quadric error at the
// optimal position, plus the weighted boundary-area term, with a
// multiplicative penalty when a texture-seam vertex is involved. Edges
// shorter than the degenerate threshold are priced at infinity so they
// can never win the queue.
#pragma once

#include <cmath>
#include <limits>
#include <span>

#include "faqem/area_quadric.hpp"
#include "faqem/feature_quadrics.hpp"
#include "faqem/quadric.hpp"

namespace faqem {

struct EdgeCostResult {
    double total = 0.0;
    Vec3 position;
    PlacementSource source = PlacementSource::FallbackMid;
    double gf_cost = 0.0;
    double area_cost = 0.0;
    bool degenerate = false;

    bool is_infinite() const { return std::isinf(total); }
};

inline constexpr double kInfiniteCost = std::numeric_limits<double>::infinity();

// Core computation on explicit inputs. `area` is the pre-summed boundary
// area quadric for this edge (pass the zero quadric when w_area is 0).
EdgeCostResult edge_cost_from_quadrics(const Quadric& q_i, const Quadric& q_j, const Vec3& p_i,
                                       const Vec3& p_j, const Quadric& area, bool seam_i,
                                       bool seam_j, const WeightSet& weights,
                                       double degenerate_length);

// Static-mesh convenience used by tests and one-shot evaluation.
EdgeCostResult edge_cost(const Mesh& mesh, const Adjacency& adj,
                         const EdgeClassification& classes, int i, int j,
                         std::span<const Quadric> gf_quadrics, const WeightSet& weights,
                         std::span<const char> seam_flags, double degenerate_length);

}  // namespace faqem
