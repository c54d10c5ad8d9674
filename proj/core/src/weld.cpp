#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "faqem/mesh_io.hpp"

namespace faqem {

namespace {

struct UnionFind {
    std::vector<int> parent;

    explicit UnionFind(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    // The smaller root survives, so cluster representatives are stable.
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a < b) parent[b] = a;
        else parent[a] = b;
    }
};

uint64_t cell_hash(int64_t x, int64_t y, int64_t z) {
    uint64_t h = static_cast<uint64_t>(x) * 73856093u;
    h ^= static_cast<uint64_t>(y) * 19349663u;
    h ^= static_cast<uint64_t>(z) * 83492791u;
    return h;
}

}  // namespace

WeldStats weld_vertices(Mesh& mesh, double tolerance) {
    WeldStats stats;
    if (tolerance <= 0.0 || mesh.positions.empty()) return stats;

    const int n = mesh.vertex_count();
    UnionFind uf(n);

    // Uniform grid with cell size = tolerance: any pair closer than the
    // tolerance lands in the same or an adjacent cell.
    std::unordered_map<uint64_t, std::vector<int>> grid;
    grid.reserve(n * 2);
    auto cell_of = [&](const Vec3& p, int64_t& cx, int64_t& cy, int64_t& cz) {
        cx = static_cast<int64_t>(std::floor(p.x / tolerance));
        cy = static_cast<int64_t>(std::floor(p.y / tolerance));
        cz = static_cast<int64_t>(std::floor(p.z / tolerance));
    };

    const double tol_sq = tolerance * tolerance;
    for (int v = 0; v < n; ++v) {
        int64_t cx, cy, cz;
        cell_of(mesh.positions[v], cx, cy, cz);
        for (int64_t dx = -1; dx <= 1; ++dx) {
            for (int64_t dy = -1; dy <= 1; ++dy) {
                for (int64_t dz = -1; dz <= 1; ++dz) {
                    auto it = grid.find(cell_hash(cx + dx, cy + dy, cz + dz));
                    if (it == grid.end()) continue;
                    for (int u : it->second) {
                        if (norm2(mesh.positions[u] - mesh.positions[v]) < tol_sq) {
                            uf.unite(u, v);
                        }
                    }
                }
            }
        }
        grid[cell_hash(cx, cy, cz)].push_back(v);
    }

    // Compact surviving representatives in index order.
    std::vector<int> remap(n, -1);
    std::vector<Vec3> new_positions;
    std::vector<Vec3> new_normals;
    std::vector<Vec3> new_colors;
    new_positions.reserve(n);
    for (int v = 0; v < n; ++v) {
        int rep = uf.find(v);
        if (remap[rep] < 0) {
            remap[rep] = static_cast<int>(new_positions.size());
            new_positions.push_back(mesh.positions[rep]);
            if (!mesh.vertex_normals.empty()) new_normals.push_back(mesh.vertex_normals[rep]);
            if (!mesh.vertex_colors.empty()) new_colors.push_back(mesh.vertex_colors[rep]);
        }
        remap[v] = remap[rep];
    }
    stats.merged_vertices = n - static_cast<int>(new_positions.size());
    if (stats.merged_vertices == 0) return stats;

    std::vector<Tri> new_faces;
    std::vector<std::array<Vec2, 3>> new_uvs;
    new_faces.reserve(mesh.faces.size());
    for (size_t f = 0; f < mesh.faces.size(); ++f) {
        Tri t = mesh.faces[f];
        for (int k = 0; k < 3; ++k) t[k] = remap[t[k]];
        if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) {
            ++stats.dropped_faces;
            continue;
        }
        new_faces.push_back(t);
        if (!mesh.corner_uvs.empty()) new_uvs.push_back(mesh.corner_uvs[f]);
    }

    mesh.positions = std::move(new_positions);
    mesh.faces = std::move(new_faces);
    mesh.corner_uvs = std::move(new_uvs);
    mesh.vertex_normals = std::move(new_normals);
    mesh.vertex_colors = std::move(new_colors);
    return stats;
}

}  // namespace faqem
