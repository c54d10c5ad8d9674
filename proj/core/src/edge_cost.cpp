#include "faqem/edge_cost.hpp"

namespace faqem {

EdgeCostResult edge_cost_from_quadrics(const Quadric& q_i, const Quadric& q_j, const Vec3& p_i,
                                       const Vec3& p_j, const Quadric& area, bool seam_i,
                                       bool seam_j, const WeightSet& weights,
                                       double degenerate_length) {
    EdgeCostResult r;
    if (distance(p_i, p_j) < degenerate_length) {
        r.total = kInfiniteCost;
        r.position = (p_i + p_j) * 0.5;
        r.degenerate = true;
        return r;
    }

    Quadric combined = q_i + q_j;
    OptimalPlacement placement = optimal_position(combined, p_i, p_j);
    r.position = placement.position;
    r.source = placement.source;
    r.gf_cost = placement.cost;

    r.total = r.gf_cost;
    if (weights.w_area > 0.0) {
        r.area_cost = std::max(0.0, area.eval(r.position));
        r.total += weights.w_area * r.area_cost;
    }
    if (weights.w_uv > 0.0 && (seam_i || seam_j)) {
        r.total *= weights.w_uv;
    }
    return r;
}

EdgeCostResult edge_cost(const Mesh& mesh, const Adjacency& adj,
                         const EdgeClassification& classes, int i, int j,
                         std::span<const Quadric> gf_quadrics, const WeightSet& weights,
                         std::span<const char> seam_flags, double degenerate_length) {
    Quadric area;
    if (weights.w_area > 0.0) area = area_quadric(mesh, adj, classes, i, j);
    bool seam_i = !seam_flags.empty() && seam_flags[i];
    bool seam_j = !seam_flags.empty() && seam_flags[j];
    return edge_cost_from_quadrics(gf_quadrics[i], gf_quadrics[j], mesh.positions[i],
                                   mesh.positions[j], area, seam_i, seam_j, weights,
                                   degenerate_length);
}

}  // namespace faqem
