#include "faqem/mesh.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace faqem {

void validate_mesh(const Mesh& mesh) {
    const int nv = mesh.vertex_count();
    for (size_t f = 0; f < mesh.faces.size(); ++f) {
        const Tri& t = mesh.faces[f];
        for (int k = 0; k < 3; ++k) {
            if (t[k] < 0 || t[k] >= nv) {
                throw std::runtime_error("face " + std::to_string(f) + " references vertex " +
                                         std::to_string(t[k]) + " outside [0, " +
                                         std::to_string(nv) + ")");
            }
        }
        if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) {
            throw std::runtime_error("face " + std::to_string(f) + " repeats a vertex index");
        }
    }
    if (!mesh.corner_uvs.empty() && mesh.corner_uvs.size() != mesh.faces.size()) {
        throw std::runtime_error("corner_uvs size does not match face count");
    }
    if (!mesh.vertex_normals.empty()) {
        if (mesh.vertex_normals.size() != mesh.positions.size()) {
            throw std::runtime_error("vertex_normals size does not match vertex count");
        }
        for (size_t i = 0; i < mesh.vertex_normals.size(); ++i) {
            double n = norm(mesh.vertex_normals[i]);
            if (std::fabs(n - 1.0) > 1e-6) {
                throw std::runtime_error("vertex normal " + std::to_string(i) +
                                         " is not unit length");
            }
        }
    }
    if (!mesh.vertex_colors.empty() && mesh.vertex_colors.size() != mesh.positions.size()) {
        throw std::runtime_error("vertex_colors size does not match vertex count");
    }
    if (mesh.texture && !mesh.texture->valid()) {
        throw std::runtime_error("attached texture image is invalid");
    }
}

}  // namespace faqem
