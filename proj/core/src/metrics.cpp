#include "faqem/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "faqem/kdtree.hpp"

namespace faqem {

namespace {

// Uniform double in [0,1) from the generator's raw bits; identical output
// for identical seeds on every platform, unlike the distribution adapters.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Vec3 color_at(const Mesh& mesh, int face, double b0, double b1, double b2) {
    if (mesh.texture && mesh.has_uvs()) {
        const auto& uv = mesh.corner_uvs[face];
        Vec2 q{b0 * uv[0].x + b1 * uv[1].x + b2 * uv[2].x,
               b0 * uv[0].y + b1 * uv[1].y + b2 * uv[2].y};
        return sample_texture(*mesh.texture, q);
    }
    const Tri& t = mesh.faces[face];
    return mesh.vertex_colors[t[0]] * b0 + mesh.vertex_colors[t[1]] * b1 +
           mesh.vertex_colors[t[2]] * b2;
}

}  // namespace

PointCloudSample sample_surface(const Mesh& mesh, int n, uint64_t seed) {
    if (n < 1) throw std::runtime_error("sample_surface: n must be >= 1");

    std::vector<double> cumulative;
    cumulative.reserve(mesh.faces.size());
    double total = 0.0;
    for (int f = 0; f < mesh.face_count(); ++f) {
        total += mesh.face_area(f);
        cumulative.push_back(total);
    }
    if (total <= 0.0) throw std::runtime_error("sample_surface: mesh has no non-degenerate face");

    PointCloudSample cloud;
    cloud.points.reserve(n);
    cloud.bbox_diagonal = mesh.bbox_diagonal();
    bool with_colors = mesh.has_appearance();
    if (with_colors) cloud.colors.reserve(n);

    std::mt19937_64 rng(seed);
    for (int i = 0; i < n; ++i) {
        double pick = uniform01(rng) * total;
        auto it = std::lower_bound(cumulative.begin(), cumulative.end(), pick);
        int f = static_cast<int>(it - cumulative.begin());
        if (f >= mesh.face_count()) f = mesh.face_count() - 1;

        // Square-root warp for uniform density over the triangle.
        double r1 = std::sqrt(uniform01(rng));
        double r2 = uniform01(rng);
        double b0 = 1.0 - r1;
        double b1 = r1 * (1.0 - r2);
        double b2 = r1 * r2;

        const Tri& t = mesh.faces[f];
        cloud.points.push_back(mesh.positions[t[0]] * b0 + mesh.positions[t[1]] * b1 +
                               mesh.positions[t[2]] * b2);
        if (with_colors) cloud.colors.push_back(color_at(mesh, f, b0, b1, b2));
    }
    return cloud;
}

namespace {

KdTree<3> build_tree(const PointCloudSample& cloud) {
    std::vector<KdTree<3>::Point> pts;
    pts.reserve(cloud.points.size());
    for (const Vec3& p : cloud.points) pts.push_back({p.x, p.y, p.z});
    return KdTree<3>(std::move(pts));
}

void directed_stats(const PointCloudSample& from, const KdTree<3>& to_tree, double& max_sq,
                    double& mean_sq) {
    max_sq = 0.0;
    double sum_sq = 0.0;
    for (const Vec3& p : from.points) {
        double sq = 0.0;
        to_tree.nearest({p.x, p.y, p.z}, &sq);
        max_sq = std::max(max_sq, sq);
        sum_sq += sq;
    }
    mean_sq = sum_sq / static_cast<double>(from.points.size());
}

void check_nonempty(const PointCloudSample& a, const PointCloudSample& b) {
    if (a.points.empty() || b.points.empty()) {
        throw std::runtime_error("distance metrics require non-empty point clouds");
    }
}

}  // namespace

DistanceResult hausdorff_symmetric(const PointCloudSample& a, const PointCloudSample& b) {
    check_nonempty(a, b);
    KdTree<3> ta = build_tree(a), tb = build_tree(b);
    double max_ab, mean_ab, max_ba, mean_ba;
    directed_stats(a, tb, max_ab, mean_ab);
    directed_stats(b, ta, max_ba, mean_ba);
    DistanceResult r;
    r.raw = std::sqrt(std::max(max_ab, max_ba));
    r.normalized = a.bbox_diagonal > 0.0 ? r.raw / a.bbox_diagonal : r.raw;
    return r;
}

DistanceResult chamfer_mean_squared(const PointCloudSample& a, const PointCloudSample& b) {
    check_nonempty(a, b);
    KdTree<3> ta = build_tree(a), tb = build_tree(b);
    double max_ab, mean_ab, max_ba, mean_ba;
    directed_stats(a, tb, max_ab, mean_ab);
    directed_stats(b, ta, max_ba, mean_ba);
    DistanceResult r;
    r.raw = 0.5 * (mean_ab + mean_ba);
    double d2 = a.bbox_diagonal * a.bbox_diagonal;
    r.normalized = d2 > 0.0 ? r.raw / d2 : r.raw;
    return r;
}

double texture_chamfer(const PointCloudSample& a, const PointCloudSample& b,
                       double lambda_color) {
    check_nonempty(a, b);
    if (!a.has_colors() || !b.has_colors()) {
        throw std::runtime_error("texture_chamfer requires colored point clouds");
    }
    double scale = a.bbox_diagonal > 0.0 ? 1.0 / a.bbox_diagonal : 1.0;

    auto joint_points = [&](const PointCloudSample& c) {
        std::vector<KdTree<6>::Point> pts;
        pts.reserve(c.points.size());
        for (size_t i = 0; i < c.points.size(); ++i) {
            const Vec3& p = c.points[i];
            const Vec3& col = c.colors[i];
            pts.push_back({p.x * scale, p.y * scale, p.z * scale, lambda_color * col.x,
                           lambda_color * col.y, lambda_color * col.z});
        }
        return pts;
    };

    std::vector<KdTree<6>::Point> pa = joint_points(a);
    std::vector<KdTree<6>::Point> pb = joint_points(b);
    KdTree<6> ta(pa), tb(pb);

    auto directed_mean = [](const std::vector<KdTree<6>::Point>& from, const KdTree<6>& to) {
        double sum = 0.0;
        for (const auto& p : from) {
            double sq = 0.0;
            to.nearest(p, &sq);
            sum += sq;
        }
        return sum / static_cast<double>(from.size());
    };
    return 0.5 * (directed_mean(pa, tb) + directed_mean(pb, ta));
}

}  // namespace faqem
