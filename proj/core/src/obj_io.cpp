#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "faqem/mesh_io.hpp"

namespace faqem {

namespace {

namespace fs = std::filesystem;

[[noreturn]] void parse_fail(const std::string& path, size_t line, const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

struct ObjCorner {
    int v = -1;
    int vt = -1;
    int vn = -1;
};

// Accepts "a", "a/b", "a//c", "a/b/c" with 1-based indices.
ObjCorner parse_corner(const std::string& token, size_t vcount, size_t vtcount, size_t vncount,
                       const std::string& path, size_t line) {
    ObjCorner c;
    int field = 0;
    size_t pos = 0;
    while (pos <= token.size() && field < 3) {
        size_t slash = token.find('/', pos);
        std::string part = token.substr(pos, slash == std::string::npos ? std::string::npos
                                                                        : slash - pos);
        if (!part.empty()) {
            long idx = 0;
            try {
                idx = std::stol(part);
            } catch (...) {
                parse_fail(path, line, "bad face index '" + part + "'");
            }
            size_t limit = field == 0 ? vcount : (field == 1 ? vtcount : vncount);
            if (idx < 1 || static_cast<size_t>(idx) > limit) {
                parse_fail(path, line, "face index " + part + " out of range");
            }
            if (field == 0) c.v = static_cast<int>(idx - 1);
            else if (field == 1) c.vt = static_cast<int>(idx - 1);
            else c.vn = static_cast<int>(idx - 1);
        } else if (field == 0) {
            parse_fail(path, line, "missing vertex index in face corner '" + token + "'");
        }
        if (slash == std::string::npos) break;
        pos = slash + 1;
        ++field;
    }
    return c;
}

// Finds the first map_Kd of the active (or first) material in an MTL file.
std::string mtl_diffuse_map(const fs::path& mtl_path, const std::string& wanted_material) {
    std::ifstream in(mtl_path);
    if (!in) return {};
    std::string line, current, found;
    while (std::getline(in, line)) {
        std::istringstream iss(line);
        std::string tag;
        iss >> tag;
        if (tag == "newmtl") {
            iss >> current;
        } else if (tag == "map_Kd") {
            std::string file;
            std::getline(iss, file);
            size_t start = file.find_first_not_of(" \t");
            if (start == std::string::npos) continue;
            size_t end = file.find_last_not_of(" \t\r");
            file = file.substr(start, end - start + 1);
            if (wanted_material.empty() || current == wanted_material) return file;
            if (found.empty()) found = file;
        }
    }
    return found;
}

}  // namespace

Mesh load_obj(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");

    Mesh mesh;
    std::vector<Vec2> uvs;
    std::vector<Vec3> normals;
    std::vector<std::array<ObjCorner, 3>> face_corners;
    std::string mtllib, usemtl;

    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream iss(line);
        std::string tag;
        if (!(iss >> tag) || tag[0] == '#') continue;

        if (tag == "v") {
            Vec3 p;
            if (!(iss >> p.x >> p.y >> p.z)) parse_fail(path, lineno, "bad vertex record");
            mesh.positions.push_back(p);
        } else if (tag == "vt") {
            Vec2 uv;
            if (!(iss >> uv.x >> uv.y)) parse_fail(path, lineno, "bad texture coordinate");
            uvs.push_back(uv);
        } else if (tag == "vn") {
            Vec3 n;
            if (!(iss >> n.x >> n.y >> n.z)) parse_fail(path, lineno, "bad normal record");
            normals.push_back(n);
        } else if (tag == "f") {
            std::vector<ObjCorner> poly;
            std::string token;
            while (iss >> token) {
                poly.push_back(parse_corner(token, mesh.positions.size(), uvs.size(),
                                            normals.size(), path, lineno));
            }
            if (poly.size() < 3) parse_fail(path, lineno, "face with fewer than 3 corners");
            for (size_t k = 2; k < poly.size(); ++k) {
                std::array<ObjCorner, 3> tri = {poly[0], poly[k - 1], poly[k]};
                if (tri[0].v == tri[1].v || tri[1].v == tri[2].v || tri[0].v == tri[2].v) {
                    parse_fail(path, lineno, "face repeats a vertex index");
                }
                face_corners.push_back(tri);
            }
        } else if (tag == "mtllib") {
            iss >> mtllib;
        } else if (tag == "usemtl") {
            iss >> usemtl;
        }
        // everything else (s, o, g, ...) is ignored
    }

    mesh.faces.reserve(face_corners.size());
    bool all_uv = !uvs.empty();
    for (const auto& fc : face_corners) {
        mesh.faces.push_back(Tri{{fc[0].v, fc[1].v, fc[2].v}});
        for (const ObjCorner& c : fc) all_uv = all_uv && c.vt >= 0;
    }
    if (all_uv && !face_corners.empty()) {
        mesh.corner_uvs.reserve(face_corners.size());
        for (const auto& fc : face_corners) {
            mesh.corner_uvs.push_back({uvs[fc[0].vt], uvs[fc[1].vt], uvs[fc[2].vt]});
        }
    }

    // Per-vertex normals: first corner reference wins. Kept only when
    // every vertex receives one, so the unit-length invariant holds.
    if (!normals.empty() && !face_corners.empty()) {
        std::vector<Vec3> per_vertex(mesh.positions.size());
        std::vector<char> seen(mesh.positions.size(), 0);
        bool all_n = true;
        for (const auto& fc : face_corners) {
            for (const ObjCorner& c : fc) {
                if (c.vn >= 0 && !seen[c.v]) {
                    per_vertex[c.v] = normalized(normals[c.vn]);
                    seen[c.v] = 1;
                }
                all_n = all_n && c.vn >= 0;
            }
        }
        for (char s : seen) all_n = all_n && s;
        if (all_n) mesh.vertex_normals = std::move(per_vertex);
    }

    mesh.material_name = usemtl;
    if (!mtllib.empty()) {
        fs::path dir = fs::path(path).parent_path();
        std::string map = mtl_diffuse_map(dir / mtllib, usemtl);
        if (!map.empty()) {
            fs::path tex = dir / map;
            try {
                mesh.texture = std::make_shared<TextureImage>(load_png(tex.string()));
            } catch (const std::exception& e) {
                std::cerr << "warning: ignoring texture '" << tex.string() << "': " << e.what()
                          << "\n";
            }
        }
    }
    return mesh;
}

void save_obj(const Mesh& mesh, const std::string& path) {
    fs::path base(path);
    std::string stem = base.stem().string();

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");

    char buf[160];
    bool with_texture = mesh.texture && mesh.has_uvs();
    if (with_texture) out << "mtllib " << stem << ".mtl\n";

    for (const Vec3& p : mesh.positions) {
        std::snprintf(buf, sizeof(buf), "v %.17g %.17g %.17g\n", p.x, p.y, p.z);
        out << buf;
    }

    // Deduplicate exact UV pairs into the vt table.
    std::vector<std::array<int, 3>> face_uv_index;
    if (mesh.has_uvs()) {
        std::map<std::pair<double, double>, int> uv_table;
        std::vector<Vec2> uv_list;
        face_uv_index.resize(mesh.faces.size());
        for (size_t f = 0; f < mesh.faces.size(); ++f) {
            for (int k = 0; k < 3; ++k) {
                const Vec2& uv = mesh.corner_uvs[f][k];
                auto [it, inserted] =
                    uv_table.try_emplace({uv.x, uv.y}, static_cast<int>(uv_list.size()));
                if (inserted) uv_list.push_back(uv);
                face_uv_index[f][k] = it->second;
            }
        }
        for (const Vec2& uv : uv_list) {
            std::snprintf(buf, sizeof(buf), "vt %.17g %.17g\n", uv.x, uv.y);
            out << buf;
        }
    }

    if (!mesh.vertex_normals.empty()) {
        for (const Vec3& n : mesh.vertex_normals) {
            std::snprintf(buf, sizeof(buf), "vn %.17g %.17g %.17g\n", n.x, n.y, n.z);
            out << buf;
        }
    }

    if (with_texture) {
        out << "usemtl " << (mesh.material_name.empty() ? "material0" : mesh.material_name)
            << "\n";
    }

    const bool has_uv = mesh.has_uvs();
    const bool has_n = !mesh.vertex_normals.empty();
    for (size_t f = 0; f < mesh.faces.size(); ++f) {
        out << "f";
        for (int k = 0; k < 3; ++k) {
            int v = mesh.faces[f][k] + 1;
            out << ' ' << v;
            if (has_uv) {
                out << '/' << face_uv_index[f][k] + 1;
                if (has_n) out << '/' << v;
            } else if (has_n) {
                out << "//" << v;
            }
        }
        out << '\n';
    }
    out.close();
    if (!out) throw std::runtime_error("write failed for '" + path + "'");

    if (with_texture) {
        fs::path dir = base.parent_path();
        std::string mtl_name = (dir / (stem + ".mtl")).string();
        std::ofstream mtl(mtl_name);
        if (!mtl) throw std::runtime_error("cannot write '" + mtl_name + "'");
        mtl << "newmtl " << (mesh.material_name.empty() ? "material0" : mesh.material_name)
            << "\n";
        mtl << "Kd 1 1 1\n";
        mtl << "map_Kd " << stem << ".png\n";
        mtl.close();
        save_png(*mesh.texture, (dir / (stem + ".png")).string());
    }
}

Mesh load_mesh(const std::string& path, double weld_tolerance, WeldStats* stats) {
    std::string ext = fs::path(path).extension().string();
    for (char& c : ext) c = static_cast<char>(std::tolower(c));

    Mesh mesh;
    if (ext == ".obj") {
        mesh = load_obj(path);
    } else if (ext == ".ply") {
        mesh = load_ply(path);
    } else {
        throw std::runtime_error("unsupported mesh format '" + ext + "' for '" + path + "'");
    }

    WeldStats ws = weld_vertices(mesh, weld_tolerance);
    if (stats) *stats = ws;
    validate_mesh(mesh);
    return mesh;
}

void save_mesh(const Mesh& mesh, const std::string& path) {
    std::string ext = fs::path(path).extension().string();
    for (char& c : ext) c = static_cast<char>(std::tolower(c));
    if (ext == ".obj") {
        save_obj(mesh, path);
    } else if (ext == ".ply") {
        save_ply(mesh, path);
    } else {
        throw std::runtime_error("unsupported mesh format '" + ext + "' for '" + path + "'");
    }
}

}  // namespace faqem
