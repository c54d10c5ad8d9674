// Iterative edge-collapse simplification driven by a lazy min-priority
// queue over composite-quadric costs, with normal-flip rejection,
// non-manifold-safe surgery, optional virtual edges across components,
// and a reversible collapse log.
#pragma once

#include <cstdint>
#include <vector>

#include "faqem/feature_quadrics.hpp"
#include "faqem/mesh.hpp"
#include "faqem/topology.hpp"

namespace faqem {

struct SimplifyConfig {
    WeightSet weights;
    int target_faces = 1;
    bool enable_virtual_edges = false;
    double weld_tolerance = 1e-6;       // applied by the loader, echoed in reports
    double degenerate_edge_fraction = 1e-8;
    double virtual_edge_fraction = 0.01;
    uint64_t rng_seed = 0;
};

// One executed collapse, in original (input) vertex/face numbering.
// Applying records in order to the input mesh reproduces the output.
struct CollapseRecord {
    int kept = -1;
    int removed = -1;
    Vec3 kept_old_position;
    Vec3 removed_old_position;
    Vec3 new_position;
    std::vector<int> removed_faces;
    std::vector<int> rewired_faces;
};

using CollapseHistory = std::vector<CollapseRecord>;

struct SimplifyStats {
    int collapses = 0;
    int flip_vetoes = 0;
    int stale_skipped = 0;
    int infinite_skipped = 0;
    int duplicate_faces_removed = 0;
    long initial_candidates = 0;
    long pushed_candidates = 0;
    int virtual_edges_inserted = 0;
    bool reached_target = false;
    bool queue_exhausted = false;  // stopped above target with nothing collapsible left
};

// Wall-clock seconds per pipeline phase. The mapping/bake slot is filled
// by the texture-transfer stage, not by simplify().
struct PhaseTimes {
    double quadric_construction = 0.0;
    double queue_population = 0.0;
    double collapse_loop = 0.0;
    double loop_pop = 0.0;
    double loop_solve = 0.0;
    double loop_area = 0.0;
    double loop_neighbor_updates = 0.0;
    double mapping_and_bake = 0.0;
};

struct SimplifyResult {
    Mesh mesh;
    CollapseHistory history;
    // Original vertex/face index of each output vertex/face.
    std::vector<int> vertex_origin;
    std::vector<int> face_origin;
    SimplifyStats stats;
    PhaseTimes phases;
};

// Collapses lowest-cost edges until the face count reaches
// config.target_faces or no executable candidate remains. When the target
// is not smaller than the input face count, returns the input unchanged
// with an empty history. Attribute arrays (UVs, normals, colors, texture)
// are dropped from the output once any collapse executes; they are
// re-generated by the appearance-transfer stage.
SimplifyResult simplify(const Mesh& mesh, const SimplifyConfig& config);

// True when moving edge (i, j) to `target` would reverse the orientation
// of a surviving incident face or squash one below face_area_tol. Faces
// containing both endpoints are the ones deleted by the collapse and are
// ignored.
bool causes_flip(const Mesh& mesh, const Adjacency& adj, int i, int j, const Vec3& target,
                 double face_area_tol = 0.0);

// Applies a history to the original mesh and compacts with the same rules
// as simplify(); the result matches the engine's output exactly.
Mesh replay_history(const Mesh& original, const CollapseHistory& history,
                    std::vector<int>* vertex_origin = nullptr,
                    std::vector<int>* face_origin = nullptr);

}  // namespace faqem
