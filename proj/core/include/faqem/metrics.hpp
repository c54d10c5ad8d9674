// Sample-based surface distance measurement: symmetric Hausdorff,
// mean-squared symmetric Chamfer, and a joint position+color Chamfer for
// textured surfaces. Distances are reported raw and normalized by the
// reference cloud's bounding-box diagonal.
#pragma once

#include <cstdint>
#include <vector>

#include "faqem/mesh.hpp"

namespace faqem {

struct PointCloudSample {
    std::vector<Vec3> points;
    std::vector<Vec3> colors;  // empty, or one RGB in [0,1]^3 per point
    double bbox_diagonal = 0.0;

    bool has_colors() const { return !colors.empty(); }
};

// Area-weighted uniform random samples, deterministic for a fixed seed.
// Colors are attached when the mesh has a texture with UVs or per-vertex
// colors. Throws when the mesh has no face with positive area.
PointCloudSample sample_surface(const Mesh& mesh, int n, uint64_t seed);

struct DistanceResult {
    double raw = 0.0;
    double normalized = 0.0;  // raw scaled by A's diagonal (squared for Chamfer)
};

// max over both directions of the farthest nearest-neighbor distance.
DistanceResult hausdorff_symmetric(const PointCloudSample& a, const PointCloudSample& b);

// 0.5 * (mean_a min_b |a-b|^2 + mean_b min_a |a-b|^2).
DistanceResult chamfer_mean_squared(const PointCloudSample& a, const PointCloudSample& b);

// Mean-squared symmetric Chamfer over 6D joint vectors
// (position / diag_A, lambda * rgb). Both clouds must carry colors.
double texture_chamfer(const PointCloudSample& a, const PointCloudSample& b,
                       double lambda_color = 1.0);

}  // namespace faqem
