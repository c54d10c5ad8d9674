#include "faqem/fixtures.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>

#include "faqem/mesh_io.hpp"

namespace faqem {
namespace fixtures {

namespace {
constexpr double kPi = 3.14159265358979323846;

double noise01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}
}  // namespace

Mesh cube() {
    Mesh m;
    m.positions = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
                   {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};
    m.faces = {
        {{0, 2, 1}}, {{0, 3, 2}},  // bottom (z = 0), outward -z
        {{4, 5, 6}}, {{4, 6, 7}},  // top
        {{0, 1, 5}}, {{0, 5, 4}},  // front (y = 0)
        {{2, 3, 7}}, {{2, 7, 6}},  // back
        {{1, 2, 6}}, {{1, 6, 5}},  // right (x = 1)
        {{3, 0, 4}}, {{3, 4, 7}},  // left
    };
    return m;
}

Mesh tetrahedron() {
    Mesh m;
    m.positions = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
    m.faces = {{{0, 2, 1}}, {{0, 1, 3}}, {{0, 3, 2}}, {{1, 2, 3}}};
    return m;
}

Mesh grid(int cells, bool with_uvs) {
    Mesh m;
    const int n = cells + 1;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            m.positions.push_back({static_cast<double>(i) / cells,
                                   static_cast<double>(j) / cells, 0.0});
        }
    }
    auto at = [n](int i, int j) { return j * n + i; };
    for (int j = 0; j < cells; ++j) {
        for (int i = 0; i < cells; ++i) {
            m.faces.push_back({{at(i, j), at(i + 1, j), at(i + 1, j + 1)}});
            m.faces.push_back({{at(i, j), at(i + 1, j + 1), at(i, j + 1)}});
        }
    }
    if (with_uvs) {
        m.corner_uvs.reserve(m.faces.size());
        for (const Tri& t : m.faces) {
            std::array<Vec2, 3> uv;
            for (int k = 0; k < 3; ++k) {
                uv[k] = {m.positions[t[k]].x, m.positions[t[k]].y};
            }
            m.corner_uvs.push_back(uv);
        }
    }
    return m;
}

Mesh creased_grid(int cells, double ridge_height) {
    Mesh m = grid(cells);
    for (Vec3& p : m.positions) {
        p.z = ridge_height * (1.0 - std::fabs(2.0 * p.x - 1.0));
    }
    return m;
}

Mesh icosphere(int subdivisions) {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    Mesh m;
    m.positions = {{-1, phi, 0}, {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0},
                   {0, -1, phi}, {0, 1, phi},  {0, -1, -phi}, {0, 1, -phi},
                   {phi, 0, -1}, {phi, 0, 1},  {-phi, 0, -1}, {-phi, 0, 1}};
    for (Vec3& p : m.positions) p = normalized(p);
    m.faces = {{{0, 11, 5}}, {{0, 5, 1}},  {{0, 1, 7}},   {{0, 7, 10}}, {{0, 10, 11}},
               {{1, 5, 9}},  {{5, 11, 4}}, {{11, 10, 2}}, {{10, 7, 6}}, {{7, 1, 8}},
               {{3, 9, 4}},  {{3, 4, 2}},  {{3, 2, 6}},   {{3, 6, 8}},  {{3, 8, 9}},
               {{4, 9, 5}},  {{2, 4, 11}}, {{6, 2, 10}},  {{8, 6, 7}},  {{9, 8, 1}}};

    for (int level = 0; level < subdivisions; ++level) {
        std::map<std::pair<int, int>, int> midpoint;
        auto mid = [&](int a, int b) {
            auto key = std::minmax(a, b);
            auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            int idx = m.vertex_count();
            m.positions.push_back(normalized((m.positions[a] + m.positions[b]) * 0.5));
            midpoint.emplace(key, idx);
            return idx;
        };
        std::vector<Tri> next;
        next.reserve(m.faces.size() * 4);
        for (const Tri& t : m.faces) {
            int ab = mid(t[0], t[1]), bc = mid(t[1], t[2]), ca = mid(t[2], t[0]);
            next.push_back({{t[0], ab, ca}});
            next.push_back({{t[1], bc, ab}});
            next.push_back({{t[2], ca, bc}});
            next.push_back({{ab, bc, ca}});
        }
        m.faces = std::move(next);
    }
    return m;
}

Mesh latlong_sphere(int rings, int segments) {
    Mesh m;
    // Poles plus (rings - 1) interior latitude circles.
    m.positions.push_back({0, 0, 1});
    for (int r = 1; r < rings; ++r) {
        double theta = kPi * r / rings;
        for (int s = 0; s < segments; ++s) {
            double phi = 2.0 * kPi * s / segments;
            m.positions.push_back({std::sin(theta) * std::cos(phi),
                                   std::sin(theta) * std::sin(phi), std::cos(theta)});
        }
    }
    m.positions.push_back({0, 0, -1});
    const int south = m.vertex_count() - 1;
    auto at = [segments](int r, int s) { return 1 + (r - 1) * segments + (s % segments); };

    for (int s = 0; s < segments; ++s) {
        m.faces.push_back({{0, at(1, s), at(1, s + 1)}});
    }
    for (int r = 1; r < rings - 1; ++r) {
        for (int s = 0; s < segments; ++s) {
            int a = at(r, s), b = at(r, s + 1), c = at(r + 1, s), d = at(r + 1, s + 1);
            m.faces.push_back({{a, c, d}});
            m.faces.push_back({{a, d, b}});
        }
    }
    for (int s = 0; s < segments; ++s) {
        m.faces.push_back({{south, at(rings - 1, s + 1), at(rings - 1, s)}});
    }
    return m;
}

namespace {

Mesh disk_with_radius(int rings, int segments, double (*radius_at)(double, int, double),
                      int waves, double amplitude) {
    Mesh m;
    m.positions.push_back({0, 0, 0});
    auto at = [segments](int r, int s) { return 1 + (r - 1) * segments + (s % segments); };
    for (int r = 1; r <= rings; ++r) {
        for (int s = 0; s < segments; ++s) {
            double angle = 2.0 * kPi * s / segments;
            double rim = radius_at(angle, waves, amplitude);
            double rad = rim * r / rings;
            m.positions.push_back({rad * std::cos(angle), rad * std::sin(angle), 0.0});
        }
    }
    for (int s = 0; s < segments; ++s) {
        m.faces.push_back({{0, at(1, s), at(1, s + 1)}});
    }
    for (int r = 1; r < rings; ++r) {
        for (int s = 0; s < segments; ++s) {
            int a = at(r, s), b = at(r, s + 1), c = at(r + 1, s), d = at(r + 1, s + 1);
            m.faces.push_back({{a, c, d}});
            m.faces.push_back({{a, d, b}});
        }
    }
    return m;
}

double unit_radius(double, int, double) { return 1.0; }
double wavy_radius(double angle, int waves, double amplitude) {
    return 1.0 + amplitude * std::sin(waves * angle);
}

}  // namespace

Mesh disk(int rings, int segments) {
    return disk_with_radius(rings, segments, unit_radius, 0, 0.0);
}

Mesh wavy_disk(int rings, int segments, int waves, double amplitude) {
    return disk_with_radius(rings, segments, wavy_radius, waves, amplitude);
}

Mesh nonmanifold_fan() {
    Mesh m;
    m.positions = {{0, 0, 0}, {1, 0, 0}, {0.5, 1, 0}, {0.5, -0.5, 1}, {0.5, -0.5, -1}};
    m.faces = {{{0, 1, 2}}, {{0, 1, 3}}, {{0, 1, 4}}};
    return m;
}

Mesh nonmanifold_wings() {
    Mesh m;
    m.positions = {{0, 0, 0},    {1, 0, 0},                      // shared spine
                   {0, 1, 0},    {1, 1, 0},                      // wing A
                   {0, -1, 0.8}, {1, -1, 0.8},                   // wing B
                   {0, -1, -0.8}, {1, -1, -0.8}};                // wing C
    m.faces = {{{0, 1, 3}}, {{0, 3, 2}},
               {{0, 1, 5}}, {{0, 5, 4}},
               {{0, 1, 7}}, {{0, 7, 6}}};
    return m;
}

Mesh boundary_junction() {
    Mesh m;
    m.positions = {{0, 0, 0},
                   {1, 0.2, 0}, {1, -0.2, 0},
                   {-0.5, 0.9, 0.2}, {-0.9, 0.5, 0.2},
                   {-0.5, -0.9, -0.2}, {-0.9, -0.5, -0.2}};
    m.faces = {{{0, 1, 2}}, {{0, 3, 4}}, {{0, 5, 6}}};
    return m;
}

Mesh subdivided_cube(int subdiv) {
    const int n = std::max(1, subdiv);
    // Origin and two in-plane axes per side, with u x v pointing outward.
    struct Side {
        Vec3 o, u, v;
    };
    const Side sides[6] = {
        {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},  // +x
        {{0, 0, 0}, {0, 0, 1}, {0, 1, 0}},  // -x
        {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}},  // +y
        {{0, 0, 0}, {1, 0, 0}, {0, 0, 1}},  // -y
        {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}},  // +z
        {{0, 0, 0}, {0, 1, 0}, {1, 0, 0}},  // -z
    };

    Mesh m;
    for (const Side& s : sides) {
        int base = m.vertex_count();
        for (int j = 0; j <= n; ++j) {
            for (int i = 0; i <= n; ++i) {
                m.positions.push_back(s.o + s.u * (static_cast<double>(i) / n) +
                                      s.v * (static_cast<double>(j) / n));
            }
        }
        auto at = [&](int i, int j) { return base + j * (n + 1) + i; };
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) {
                m.faces.push_back({{at(i, j), at(i + 1, j), at(i + 1, j + 1)}});
                m.faces.push_back({{at(i, j), at(i + 1, j + 1), at(i, j + 1)}});
            }
        }
    }
    weld_vertices(m, 1e-9);  // stitch coincident side borders
    return m;
}

Mesh two_cubes(double gap, int subdiv) {
    Mesh m = subdivided_cube(subdiv);
    Mesh other = m;
    int offset = m.vertex_count();
    for (Vec3 p : other.positions) {
        p.x += 1.0 + gap;
        m.positions.push_back(p);
    }
    for (Tri t : other.faces) {
        for (int k = 0; k < 3; ++k) t[k] += offset;
        m.faces.push_back(t);
    }
    return m;
}

Mesh textured_gradient_plane(int cells, int texture_size) {
    Mesh m = grid(cells, true);
    m.texture = std::make_shared<TextureImage>(gradient_texture(texture_size, texture_size));
    m.material_name = "gradient";
    return m;
}

Mesh cube_six_charts() {
    Mesh m = cube();
    // 3x2 chart layout, one cell per cube side; every vertex touches
    // three different charts.
    m.corner_uvs.resize(m.faces.size());
    for (size_t f = 0; f < m.faces.size(); ++f) {
        int side = static_cast<int>(f) / 2;
        double u0 = (side % 3) / 3.0, v0 = (side / 3) / 2.0;
        double u1 = u0 + 1.0 / 3.0, v1 = v0 + 0.5;
        // First triangle of the side covers (u0,v0)-(u1,v0)-(u1,v1),
        // second covers (u0,v0)-(u1,v1)-(u0,v1).
        if (f % 2 == 0) {
            m.corner_uvs[f] = {Vec2{u0, v0}, Vec2{u1, v0}, Vec2{u1, v1}};
        } else {
            m.corner_uvs[f] = {Vec2{u0, v0}, Vec2{u1, v1}, Vec2{u0, v1}};
        }
    }
    return m;
}

Mesh noisy_sphere(int subdivisions, double amplitude, uint64_t seed) {
    Mesh m = icosphere(subdivisions);
    std::mt19937_64 rng(seed);
    for (Vec3& p : m.positions) {
        double r = 1.0 + amplitude * (2.0 * noise01(rng) - 1.0);
        p = p * r;
    }
    return m;
}

Mesh noisy_grid(int cells, double amplitude, uint64_t seed) {
    Mesh m = grid(cells);
    std::mt19937_64 rng(seed);
    for (Vec3& p : m.positions) {
        p.z = amplitude * (2.0 * noise01(rng) - 1.0);
    }
    return m;
}

TextureImage gradient_texture(int width, int height) {
    TextureImage img;
    img.width = width;
    img.height = height;
    img.channels = 3;
    img.pixels.resize(static_cast<size_t>(width) * height * 3);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            double v = width > 1 ? static_cast<double>(x) / (width - 1) : 0.0;
            img.set_rgb(x, y, {v, v, v});
        }
    }
    return img;
}

std::vector<std::string> write_fixture_set(const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);

    std::vector<std::pair<std::string, Mesh>> set;
    set.emplace_back("wavy_disk", wavy_disk(16, 48));
    set.emplace_back("disk", disk(16, 48));
    set.emplace_back("icosphere", icosphere(2));
    set.emplace_back("creased_grid", creased_grid(12));
    set.emplace_back("nonmanifold_wings", nonmanifold_wings());
    set.emplace_back("two_cubes", two_cubes(0.005));
    set.emplace_back("textured_gradient_plane", textured_gradient_plane(8));
    set.emplace_back("noisy_sphere", noisy_sphere(2, 0.03, 11));
    set.emplace_back("noisy_grid", noisy_grid(12, 0.02, 12));
    set.emplace_back("cube", cube());
    set.emplace_back("tetrahedron", tetrahedron());
    set.emplace_back("boundary_junction", boundary_junction());

    std::vector<std::string> paths;
    for (auto& [name, mesh] : set) {
        fs::path p = fs::path(dir) / (name + ".obj");
        save_mesh(mesh, p.string());
        paths.push_back(p.string());
    }

    std::ofstream manifest(fs::path(dir) / "manifest.txt");
    for (const std::string& p : paths) manifest << p << "\n";
    return paths;
}

}  // namespace fixtures
}  // namespace faqem
