// Artificial collapse candidates joining spatially proximate disconnected
// components, so fragmented inputs can be merged into one compact mesh.
#pragma once

#include <vector>

#include "faqem/mesh.hpp"
#include "faqem/topology.hpp"

namespace faqem {

struct VirtualEdge {
    int a = -1;
    int b = -1;  // a < b

    bool operator==(const VirtualEdge& o) const { return a == o.a && b == o.b; }
};

// For every pair of triangles from different components whose centroids
// lie within tau = tau_fraction * bbox diagonal, nominates the closest
// vertex pair of the two triangles. Results are deduplicated per
// unordered vertex pair and sorted; candidates shorter than
// degenerate_fraction * bbox diagonal are discarded. Empty when the mesh
// has fewer than two components.
std::vector<VirtualEdge> insert_virtual_edges(const Mesh& mesh, const Adjacency& adj,
                                              double tau_fraction = 0.01,
                                              double degenerate_fraction = 1e-8);

}  // namespace faqem
