#include "faqem/virtual_edges.hpp"

#include <algorithm>
#include <set>

#include "faqem/kdtree.hpp"

namespace faqem {

std::vector<VirtualEdge> insert_virtual_edges(const Mesh& mesh, const Adjacency& adj,
                                              double tau_fraction, double degenerate_fraction) {
    std::vector<VirtualEdge> result;

    int component_count = 0;
    std::vector<int> labels = connected_components(adj, &component_count);
    if (component_count < 2) return result;

    double diag = mesh.bbox_diagonal();
    double tau = tau_fraction * diag;
    double min_length = degenerate_fraction * diag;
    if (tau <= 0.0) return result;

    // Triangle centroids bucketed per component.
    std::vector<std::vector<int>> comp_faces(component_count);
    for (int f = 0; f < mesh.face_count(); ++f) {
        comp_faces[labels[mesh.faces[f][0]]].push_back(f);
    }

    std::vector<KdTree<3>> trees(component_count);
    for (int c = 0; c < component_count; ++c) {
        std::vector<KdTree<3>::Point> pts;
        pts.reserve(comp_faces[c].size());
        for (int f : comp_faces[c]) {
            Vec3 g = mesh.face_centroid(f);
            pts.push_back({g.x, g.y, g.z});
        }
        trees[c] = KdTree<3>(std::move(pts));
    }

    std::set<uint64_t> seen;
    for (int ca = 0; ca < component_count; ++ca) {
        for (int cb = ca + 1; cb < component_count; ++cb) {
            if (comp_faces[ca].empty() || comp_faces[cb].empty()) continue;
            // Query the smaller side against the larger tree.
            int query_comp = comp_faces[ca].size() <= comp_faces[cb].size() ? ca : cb;
            int tree_comp = query_comp == ca ? cb : ca;
            for (size_t qi = 0; qi < comp_faces[query_comp].size(); ++qi) {
                int fq = comp_faces[query_comp][qi];
                Vec3 g = mesh.face_centroid(fq);
                for (int hit : trees[tree_comp].radius_search({g.x, g.y, g.z}, tau)) {
                    int fh = comp_faces[tree_comp][hit];
                    // Closest vertex pair between the two triangles.
                    int best_a = -1, best_b = -1;
                    double best_sq = std::numeric_limits<double>::max();
                    for (int u : mesh.faces[fq].v) {
                        for (int w : mesh.faces[fh].v) {
                            double sq = norm2(mesh.positions[u] - mesh.positions[w]);
                            if (sq < best_sq) {
                                best_sq = sq;
                                best_a = u;
                                best_b = w;
                            }
                        }
                    }
                    if (best_a < 0 || std::sqrt(best_sq) <= min_length) continue;
                    uint64_t key = edge_key(best_a, best_b);
                    if (seen.insert(key).second) {
                        auto [lo, hi] = edge_key_unpack(key);
                        result.push_back({lo, hi});
                    }
                }
            }
        }
    }
    std::sort(result.begin(), result.end(),
              [](const VirtualEdge& x, const VirtualEdge& y) {
                  return x.a != y.a ? x.a < y.a : x.b < y.b;
              });
    return result;
}

}  // namespace faqem
