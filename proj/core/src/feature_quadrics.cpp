#include "faqem/feature_quadrics.hpp"

#include <cmath>

namespace faqem {

double boundary_curvature(const Vec3& v1, const Vec3& v2, const Vec3& v3,
                          double degenerate_length) {
    Vec3 d1 = v3 - v2;
    Vec3 d2 = v3 - 2.0 * v1 + v2;
    double len = norm(d1);
    if (len <= degenerate_length || len == 0.0) return 0.0;
    return norm(cross(d1, d2)) / (len * len * len);
}

Quadric boundary_quadric(const Vec3& v1, const Vec3& v2, const Vec3& v3, double w_boundary,
                         double degenerate_length) {
    double kappa = boundary_curvature(v1, v2, v3, degenerate_length);
    if (kappa == 0.0 || w_boundary == 0.0) return Quadric{};

    // Plane orthogonal to the chain triangle; the raw cross product keeps
    // the penalty proportional to the local triangle scale.
    Vec3 n1 = cross(v1 - v2, v3 - v1);
    Plane p1{n1, -dot(n1, v1)};
    // Plane facing along the boundary edge direction.
    Vec3 d = v1 - v2;
    Plane p2{d, -dot(d, v1)};

    return (plane_quadric(p1) + plane_quadric(p2)) * (w_boundary * kappa);
}

Quadric normal_quadric(const Vec3& v, const Vec3& n, double w_normal) {
    if (w_normal == 0.0) return Quadric{};
    double len = norm(n);
    if (len <= 0.0) return Quadric{};
    Vec3 unit = (std::fabs(len - 1.0) > 1e-6) ? n / len : n;
    Plane p{unit, -dot(unit, v)};
    return plane_quadric(p) * w_normal;
}

Quadric base_quadric(const Mesh& mesh, const Adjacency& adj, int v, double w_plane_area,
                     double face_area_tol, bool* all_degenerate) {
    Quadric q;
    bool any = false;
    for (int f : adj.v_to_t[v]) {
        const Tri& t = mesh.faces[f];
        const Vec3& a = mesh.positions[t[0]];
        const Vec3& b = mesh.positions[t[1]];
        const Vec3& c = mesh.positions[t[2]];
        double area = triangle_area(a, b, c);
        if (area <= face_area_tol) continue;
        any = true;
        Quadric k = plane_quadric(plane_from_triangle(a, b, c));
        if (w_plane_area > 0.0) {
            q += k * (1.0 / (w_plane_area * area));
        } else {
            q += k;
        }
    }
    if (all_degenerate) *all_degenerate = !any && !adj.v_to_t[v].empty();
    return q;
}

Vec3 vertex_normal_estimate(const Mesh& mesh, const Adjacency& adj, int v) {
    Vec3 sum;
    // Raw cross products weight each face by twice its area.
    for (int f : adj.v_to_t[v]) sum += mesh.face_normal_raw(f);
    return normalized(sum);
}

Quadric gf_quadric(const Mesh& mesh, const Adjacency& adj, const EdgeClassification& classes,
                   int v, const WeightSet& weights, double degenerate_length,
                   double face_area_tol) {
    Quadric q = base_quadric(mesh, adj, v, weights.w_plane_area, face_area_tol);

    if (weights.w_boundary > 0.0) {
        if (auto chain = boundary_chain_neighbors(adj, classes, v)) {
            q += boundary_quadric(mesh.positions[v], mesh.positions[chain->first],
                                  mesh.positions[chain->second], weights.w_boundary,
                                  degenerate_length);
        }
    }
    if (weights.w_normal > 0.0) {
        Vec3 n = mesh.vertex_normals.empty() ? vertex_normal_estimate(mesh, adj, v)
                                             : mesh.vertex_normals[v];
        q += normal_quadric(mesh.positions[v], n, weights.w_normal);
    }
    return q;
}

}  // namespace faqem
