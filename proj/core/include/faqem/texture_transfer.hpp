// Appearance transfer from the original to the simplified mesh. Surface
// samples on the simplified mesh are walked backward through the collapse
// history — at each un-collapse a sample re-anchors to the closer parent
// vertex — then localized on the original surface and baked into a fresh
// per-triangle texture atlas or per-vertex colors.
#pragma once

#include <vector>

#include "faqem/mesh.hpp"
#include "faqem/simplify.hpp"

namespace faqem {

struct SurfaceSample {
    int face = -1;                    // simplified-mesh face
    double b0 = 0, b1 = 0, b2 = 0;    // barycentric coordinates, sum to 1
    Vec3 position;                    // fixed point on the simplified surface
    int anchor = -1;                  // vertex id in original numbering
};

// Deterministic stratified samples, allocated to faces in proportion to
// surface area (largest-remainder rounding, at least one per face with
// positive area). Each sample's anchor starts at the nearest corner of
// its face, translated to original numbering via vertex_origin.
std::vector<SurfaceSample> sample_simplified_surface(const Mesh& simplified,
                                                     const std::vector<int>& vertex_origin,
                                                     long total_budget);

struct Correspondence {
    struct Item {
        Vec3 point;      // resolved position on the original surface
        Vec3 color;      // sampled there; meaningful only when has_colors
        int anchor = -1; // final anchor vertex (original numbering)
    };
    std::vector<Item> items;  // parallel to the sample list
    bool has_colors = false;
    size_t stages_reversed = 0;
};

// Walks the history in reverse. original_alive_hint lists the original
// ids of the simplified mesh's vertices (the alive set at the end of
// simplification); a record inconsistent with that evolution throws.
// After full reversal each sample resolves to the closest point on the
// original faces incident to its final anchor.
Correspondence successive_map(const Mesh& original, const CollapseHistory& history,
                              const std::vector<SurfaceSample>& samples,
                              const std::vector<int>& original_alive_hint);

struct ChartPlacement {
    // Chart-local flattened corners plus the chart origin, in texels.
    Vec2 corner_uv[3];
    int x = 0, y = 0, w = 0, h = 0;
};

struct BakedAtlas {
    TextureImage image;
    std::vector<ChartPlacement> charts;  // one per simplified face
    int resolution = 0;
};

// Bakes correspondence colors into a new atlas of per-triangle charts
// (shelf packed with 2-texel gutters) and writes fresh per-corner UVs
// into the simplified mesh. The resolution doubles (up to 4096) when the
// charts cannot fit. Throws when the correspondence carries no colors.
BakedAtlas bake_atlas(Mesh& simplified, const Correspondence& corr,
                      const std::vector<SurfaceSample>& samples, int resolution);

// Assigns each simplified vertex the correspondence color of the nearest
// sample. Throws on an empty or colorless correspondence.
void bake_vertex_colors(Mesh& simplified, const Correspondence& corr,
                        const std::vector<SurfaceSample>& samples);

}  // namespace faqem
