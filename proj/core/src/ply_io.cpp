#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "faqem/mesh_io.hpp"

namespace faqem {

namespace {

[[noreturn]] void ply_fail(const std::string& path, const std::string& what) {
    throw std::runtime_error(path + ": " + what);
}

enum class PlyType { Char, UChar, Short, UShort, Int, UInt, Float, Double };

size_t type_size(PlyType t) {
    switch (t) {
        case PlyType::Char:
        case PlyType::UChar: return 1;
        case PlyType::Short:
        case PlyType::UShort: return 2;
        case PlyType::Int:
        case PlyType::UInt:
        case PlyType::Float: return 4;
        case PlyType::Double: return 8;
    }
    return 0;
}

PlyType parse_type(const std::string& name, const std::string& path) {
    if (name == "char" || name == "int8") return PlyType::Char;
    if (name == "uchar" || name == "uint8") return PlyType::UChar;
    if (name == "short" || name == "int16") return PlyType::Short;
    if (name == "ushort" || name == "uint16") return PlyType::UShort;
    if (name == "int" || name == "int32") return PlyType::Int;
    if (name == "uint" || name == "uint32") return PlyType::UInt;
    if (name == "float" || name == "float32") return PlyType::Float;
    if (name == "double" || name == "float64") return PlyType::Double;
    ply_fail(path, "unsupported property type '" + name + "'");
}

struct PlyProperty {
    std::string name;
    PlyType type = PlyType::Float;
    bool is_list = false;
    PlyType count_type = PlyType::UChar;
};

struct PlyElement {
    std::string name;
    size_t count = 0;
    std::vector<PlyProperty> properties;
};

double read_binary_scalar(std::istream& in, PlyType t, const std::string& path) {
    unsigned char buf[8];
    in.read(reinterpret_cast<char*>(buf), static_cast<std::streamsize>(type_size(t)));
    if (!in) ply_fail(path, "unexpected end of binary data");
    switch (t) {
        case PlyType::Char: return static_cast<double>(static_cast<signed char>(buf[0]));
        case PlyType::UChar: return static_cast<double>(buf[0]);
        case PlyType::Short: {
            int16_t v;
            std::memcpy(&v, buf, 2);
            return v;
        }
        case PlyType::UShort: {
            uint16_t v;
            std::memcpy(&v, buf, 2);
            return v;
        }
        case PlyType::Int: {
            int32_t v;
            std::memcpy(&v, buf, 4);
            return v;
        }
        case PlyType::UInt: {
            uint32_t v;
            std::memcpy(&v, buf, 4);
            return v;
        }
        case PlyType::Float: {
            float v;
            std::memcpy(&v, buf, 4);
            return v;
        }
        case PlyType::Double: {
            double v;
            std::memcpy(&v, buf, 8);
            return v;
        }
    }
    return 0.0;
}

}  // namespace

Mesh load_ply(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line) || line.substr(0, 3) != "ply") ply_fail(path, "missing ply magic");

    bool binary = false;
    std::vector<PlyElement> elements;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream iss(line);
        std::string tag;
        iss >> tag;
        if (tag == "comment" || tag == "obj_info") continue;
        if (tag == "format") {
            std::string fmt;
            iss >> fmt;
            if (fmt == "ascii") binary = false;
            else if (fmt == "binary_little_endian") binary = true;
            else ply_fail(path, "unsupported format '" + fmt + "'");
        } else if (tag == "element") {
            PlyElement el;
            iss >> el.name >> el.count;
            elements.push_back(el);
        } else if (tag == "property") {
            if (elements.empty()) ply_fail(path, "property before element");
            PlyProperty p;
            std::string t;
            iss >> t;
            if (t == "list") {
                std::string ct, vt;
                iss >> ct >> vt >> p.name;
                p.is_list = true;
                p.count_type = parse_type(ct, path);
                p.type = parse_type(vt, path);
            } else {
                p.type = parse_type(t, path);
                iss >> p.name;
            }
            elements.back().properties.push_back(p);
        } else if (tag == "end_header") {
            break;
        } else if (!tag.empty()) {
            ply_fail(path, "unrecognized header line '" + line + "'");
        }
    }

    Mesh mesh;
    auto read_scalar = [&](PlyType t) -> double {
        if (binary) return read_binary_scalar(in, t, path);
        double v;
        if (!(in >> v)) ply_fail(path, "unexpected end of ascii data");
        return v;
    };

    for (const PlyElement& el : elements) {
        if (el.name == "vertex") {
            int ix = -1, iy = -1, iz = -1, ir = -1, ig = -1, ib = -1;
            for (size_t p = 0; p < el.properties.size(); ++p) {
                const std::string& n = el.properties[p].name;
                if (n == "x") ix = static_cast<int>(p);
                else if (n == "y") iy = static_cast<int>(p);
                else if (n == "z") iz = static_cast<int>(p);
                else if (n == "red") ir = static_cast<int>(p);
                else if (n == "green") ig = static_cast<int>(p);
                else if (n == "blue") ib = static_cast<int>(p);
                if (el.properties[p].is_list) ply_fail(path, "list property on vertex element");
            }
            if (ix < 0 || iy < 0 || iz < 0) ply_fail(path, "vertex element lacks x/y/z");
            bool with_color = ir >= 0 && ig >= 0 && ib >= 0;
            mesh.positions.reserve(el.count);
            if (with_color) mesh.vertex_colors.reserve(el.count);
            std::vector<double> row(el.properties.size());
            for (size_t v = 0; v < el.count; ++v) {
                for (size_t p = 0; p < el.properties.size(); ++p) {
                    row[p] = read_scalar(el.properties[p].type);
                }
                mesh.positions.push_back({row[ix], row[iy], row[iz]});
                if (with_color) {
                    mesh.vertex_colors.push_back(
                        {row[ir] / 255.0, row[ig] / 255.0, row[ib] / 255.0});
                }
            }
        } else if (el.name == "face") {
            for (size_t f = 0; f < el.count; ++f) {
                for (const PlyProperty& p : el.properties) {
                    if (p.is_list && (p.name == "vertex_indices" || p.name == "vertex_index")) {
                        int count = static_cast<int>(read_scalar(p.count_type));
                        if (count < 3) ply_fail(path, "face with fewer than 3 indices");
                        std::vector<int> poly(count);
                        for (int k = 0; k < count; ++k) {
                            poly[k] = static_cast<int>(read_scalar(p.type));
                            if (poly[k] < 0 ||
                                static_cast<size_t>(poly[k]) >= mesh.positions.size()) {
                                ply_fail(path, "face index out of range");
                            }
                        }
                        for (int k = 2; k < count; ++k) {
                            mesh.faces.push_back(Tri{{poly[0], poly[k - 1], poly[k]}});
                        }
                    } else if (p.is_list) {
                        int count = static_cast<int>(read_scalar(p.count_type));
                        for (int k = 0; k < count; ++k) read_scalar(p.type);
                    } else {
                        read_scalar(p.type);
                    }
                }
            }
        } else {
            // Skip unknown elements property by property.
            for (size_t e = 0; e < el.count; ++e) {
                for (const PlyProperty& p : el.properties) {
                    if (p.is_list) {
                        int count = static_cast<int>(read_scalar(p.count_type));
                        for (int k = 0; k < count; ++k) read_scalar(p.type);
                    } else {
                        read_scalar(p.type);
                    }
                }
            }
        }
    }
    return mesh;
}

void save_ply(const Mesh& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");

    bool with_color = mesh.has_vertex_colors();
    out << "ply\nformat ascii 1.0\n";
    out << "element vertex " << mesh.positions.size() << "\n";
    out << "property double x\nproperty double y\nproperty double z\n";
    if (with_color) {
        out << "property uchar red\nproperty uchar green\nproperty uchar blue\n";
    }
    out << "element face " << mesh.faces.size() << "\n";
    out << "property list uchar int vertex_indices\n";
    out << "end_header\n";

    char buf[160];
    for (size_t v = 0; v < mesh.positions.size(); ++v) {
        const Vec3& p = mesh.positions[v];
        std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g", p.x, p.y, p.z);
        out << buf;
        if (with_color) {
            const Vec3& c = mesh.vertex_colors[v];
            auto b = [](double x) {
                return static_cast<int>(std::lround(std::clamp(x, 0.0, 1.0) * 255.0));
            };
            out << ' ' << b(c.x) << ' ' << b(c.y) << ' ' << b(c.z);
        }
        out << '\n';
    }
    for (const Tri& t : mesh.faces) {
        out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
    }
    out.close();
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace faqem
