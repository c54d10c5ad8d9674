// Generalized mesh connectivity. No manifold assumption anywhere: an edge
// may sit on any number of faces, and all queries are driven by incident
// face counts.
#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "faqem/mesh.hpp"

namespace faqem {

inline uint64_t edge_key(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<uint64_t>(static_cast<uint32_t>(a)) << 32) | static_cast<uint32_t>(b);
}
inline std::pair<int, int> edge_key_unpack(uint64_t key) {
    return {static_cast<int>(key >> 32), static_cast<int>(key & 0xffffffffu)};
}

// Per-vertex neighbor and incident-face sets, stored as sorted unique
// vectors so iteration order is deterministic.
struct Adjacency {
    std::vector<std::vector<int>> v_to_v;
    std::vector<std::vector<int>> v_to_t;
};

Adjacency build_adjacency(const Mesh& mesh);

// Sorted-unique insert/erase helpers shared with the collapse engine.
void sorted_insert(std::vector<int>& set, int value);
void sorted_erase(std::vector<int>& set, int value);
bool sorted_contains(const std::vector<int>& set, int value);

enum class EdgeClass { Boundary, Interior, NonManifold };

struct EdgeClassification {
    // Undirected edge -> number of incident faces.
    std::unordered_map<uint64_t, int> face_count;

    int count(int a, int b) const {
        auto it = face_count.find(edge_key(a, b));
        return it == face_count.end() ? 0 : it->second;
    }
    bool is_edge(int a, int b) const { return count(a, b) > 0; }
    bool is_boundary(int a, int b) const { return count(a, b) == 1; }
    std::optional<EdgeClass> classify(int a, int b) const {
        int c = count(a, b);
        if (c == 0) return std::nullopt;
        if (c == 1) return EdgeClass::Boundary;
        if (c == 2) return EdgeClass::Interior;
        return EdgeClass::NonManifold;
    }
};

EdgeClassification classify_edges(const Mesh& mesh);

// The two neighbors of v along its boundary chain, ordered by index.
// Empty for interior vertices and for boundary junctions (vertices with
// a number of incident boundary edges other than two).
std::optional<std::pair<int, int>> boundary_chain_neighbors(const Adjacency& adj,
                                                            const EdgeClassification& classes,
                                                            int v);

// Per-vertex component labels in [0, count); labels are assigned in order
// of the lowest vertex index in each component.
std::vector<int> connected_components(const Adjacency& adj, int* component_count = nullptr);

// Vertices whose incident face corners carry at least two UV coordinates
// more than `tolerance` apart. Returns a sorted index list; empty when the
// mesh has no UVs.
std::vector<int> detect_uv_seams(const Mesh& mesh, double tolerance = 1e-7);

}  // namespace faqem
