#include "faqem/topology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace faqem {

void sorted_insert(std::vector<int>& set, int value) {
    auto it = std::lower_bound(set.begin(), set.end(), value);
    if (it == set.end() || *it != value) set.insert(it, value);
}

void sorted_erase(std::vector<int>& set, int value) {
    auto it = std::lower_bound(set.begin(), set.end(), value);
    if (it != set.end() && *it == value) set.erase(it);
}

bool sorted_contains(const std::vector<int>& set, int value) {
    return std::binary_search(set.begin(), set.end(), value);
}

Adjacency build_adjacency(const Mesh& mesh) {
    Adjacency adj;
    adj.v_to_v.resize(mesh.positions.size());
    adj.v_to_t.resize(mesh.positions.size());
    for (size_t f = 0; f < mesh.faces.size(); ++f) {
        const Tri& t = mesh.faces[f];
        for (int k = 0; k < 3; ++k) {
            sorted_insert(adj.v_to_t[t[k]], static_cast<int>(f));
            sorted_insert(adj.v_to_v[t[k]], t[(k + 1) % 3]);
            sorted_insert(adj.v_to_v[t[k]], t[(k + 2) % 3]);
        }
    }
    return adj;
}

EdgeClassification classify_edges(const Mesh& mesh) {
    EdgeClassification classes;
    classes.face_count.reserve(mesh.faces.size() * 2);
    for (const Tri& t : mesh.faces) {
        classes.face_count[edge_key(t[0], t[1])]++;
        classes.face_count[edge_key(t[1], t[2])]++;
        classes.face_count[edge_key(t[0], t[2])]++;
    }
    return classes;
}

std::optional<std::pair<int, int>> boundary_chain_neighbors(const Adjacency& adj,
                                                            const EdgeClassification& classes,
                                                            int v) {
    int found[2] = {-1, -1};
    int count = 0;
    for (int n : adj.v_to_v[v]) {
        if (classes.is_boundary(v, n)) {
            if (count < 2) found[count] = n;
            ++count;
            if (count > 2) return std::nullopt;
        }
    }
    if (count != 2) return std::nullopt;
    return std::make_pair(found[0], found[1]);
}

std::vector<int> connected_components(const Adjacency& adj, int* component_count) {
    const int n = static_cast<int>(adj.v_to_v.size());
    std::vector<int> label(n, -1);
    int next = 0;
    std::deque<int> queue;
    for (int seed = 0; seed < n; ++seed) {
        if (label[seed] >= 0) continue;
        label[seed] = next;
        queue.push_back(seed);
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int u : adj.v_to_v[v]) {
                if (label[u] < 0) {
                    label[u] = next;
                    queue.push_back(u);
                }
            }
        }
        ++next;
    }
    if (component_count) *component_count = next;
    return label;
}

std::vector<int> detect_uv_seams(const Mesh& mesh, double tolerance) {
    std::vector<int> seams;
    if (!mesh.has_uvs()) return seams;

    // Distinct-UV representatives per vertex; vertex valence keeps the
    // inner scan short.
    std::vector<std::vector<Vec2>> reps(mesh.positions.size());
    std::vector<char> is_seam(mesh.positions.size(), 0);
    for (size_t f = 0; f < mesh.faces.size(); ++f) {
        for (int k = 0; k < 3; ++k) {
            int v = mesh.faces[f][k];
            if (is_seam[v]) continue;
            const Vec2& uv = mesh.corner_uvs[f][k];
            bool matched = false;
            for (const Vec2& r : reps[v]) {
                if (std::fabs(r.x - uv.x) <= tolerance && std::fabs(r.y - uv.y) <= tolerance) {
                    matched = true;
                    break;
                }
            }
            if (!matched) {
                reps[v].push_back(uv);
                if (reps[v].size() >= 2) is_seam[v] = 1;
            }
        }
    }
    for (size_t v = 0; v < is_seam.size(); ++v) {
        if (is_seam[v]) seams.push_back(static_cast<int>(v));
    }
    return seams;
}

}  // namespace faqem
