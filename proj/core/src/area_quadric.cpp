#include "faqem/area_quadric.hpp"

namespace faqem {

Quadric area_edge_quadric(const Vec3& vr, const Vec3& vs) {
    const Vec3 e = vs - vr;       // edge vector
    const Vec3 t = cross(vr, vs); // triangle vector

    // 0.5 * [ E^T E   -E t ]   with E the cross-product matrix of e;
    //       [ (-E t)^T t.t ]   E^T E = |e|^2 I - e e^T.
    Quadric q;
    double ee = dot(e, e);
    q.a00 = ee - e.x * e.x;
    q.a01 = -e.x * e.y;
    q.a02 = -e.x * e.z;
    q.a11 = ee - e.y * e.y;
    q.a12 = -e.y * e.z;
    q.a22 = ee - e.z * e.z;

    Vec3 et = cross(e, t);
    q.a03 = -et.x;
    q.a13 = -et.y;
    q.a23 = -et.z;
    q.a33 = dot(t, t);
    return q * 0.5;
}

Quadric area_quadric(const Mesh& mesh, const Adjacency& adj, const EdgeClassification& classes,
                     int i, int j) {
    Quadric q;
    const int endpoints[2] = {i, j};
    uint64_t self = edge_key(i, j);
    bool self_added = false;
    for (int r : endpoints) {
        for (int s : adj.v_to_v[r]) {
            if (!classes.is_boundary(r, s)) continue;
            uint64_t key = edge_key(r, s);
            if (key == self) {
                if (self_added) continue;  // the collapsing edge itself counts once
                self_added = true;
            }
            q += area_edge_quadric(mesh.positions[r], mesh.positions[s]);
        }
    }
    return q;
}

}  // namespace faqem
