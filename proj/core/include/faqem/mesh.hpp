// Indexed triangle mesh with optional appearance attributes. Faces are
// plain index triples; per-corner UVs (not per-vertex) so texture seams
// survive vertex sharing.
#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "faqem/geom.hpp"
#include "faqem/image.hpp"

namespace faqem {

struct Tri {
    std::array<int, 3> v{0, 0, 0};

    int& operator[](int i) { return v[i]; }
    int operator[](int i) const { return v[i]; }
    bool contains(int vertex) const { return v[0] == vertex || v[1] == vertex || v[2] == vertex; }
    bool operator==(const Tri& o) const { return v == o.v; }
};

struct Mesh {
    std::vector<Vec3> positions;
    std::vector<Tri> faces;
    // Empty, or one UV triple per face.
    std::vector<std::array<Vec2, 3>> corner_uvs;
    // Empty, or one unit vector per vertex.
    std::vector<Vec3> vertex_normals;
    // Empty, or one RGB color in [0,1]^3 per vertex.
    std::vector<Vec3> vertex_colors;
    std::shared_ptr<TextureImage> texture;
    std::string material_name;

    bool has_uvs() const { return !corner_uvs.empty(); }
    bool has_vertex_colors() const { return !vertex_colors.empty(); }
    bool has_appearance() const { return (texture && has_uvs()) || has_vertex_colors(); }

    int vertex_count() const { return static_cast<int>(positions.size()); }
    int face_count() const { return static_cast<int>(faces.size()); }

    Box3 bounds() const {
        Box3 b;
        for (const Vec3& p : positions) b.expand(p);
        return b;
    }
    double bbox_diagonal() const { return bounds().diagonal(); }

    Vec3 face_centroid(int f) const {
        const Tri& t = faces[f];
        return (positions[t[0]] + positions[t[1]] + positions[t[2]]) / 3.0;
    }
    double face_area(int f) const {
        const Tri& t = faces[f];
        return triangle_area(positions[t[0]], positions[t[1]], positions[t[2]]);
    }
    Vec3 face_normal_raw(int f) const {
        const Tri& t = faces[f];
        return triangle_normal_raw(positions[t[0]], positions[t[1]], positions[t[2]]);
    }
};

// Throws std::runtime_error when a structural invariant is violated:
// out-of-range face indices, repeated indices within a face, attribute
// arrays of the wrong length, or non-unit vertex normals.
void validate_mesh(const Mesh& mesh);

}  // namespace faqem
