#include <doctest.h>

#include <cmath>
#include <fstream>
#include <random>

#include "faqem/fixtures.hpp"
#include "faqem/mesh_io.hpp"
#include "test_util.hpp"

using namespace faqem;

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("obj loading: cube, uv resolution, welding") {
    testutil::TempDir dir;

    std::string cube_path = dir.file("cube.obj");
    save_mesh(fixtures::cube(), cube_path);
    Mesh cube = load_mesh(cube_path);
    CHECK(cube.vertex_count() == 8);
    CHECK(cube.face_count() == 12);

    // Corner UVs resolve from v/vt references.
    std::string tri_path = dir.file("tri.obj");
    write_file(tri_path,
               "v 0 0 0\nv 1 0 0\nv 0 1 0\n"
               "vt 0.1 0.2\nvt 0.9 0.1\nvt 0.5 0.8\n"
               "f 1/1 2/2 3/3\n");
    Mesh tri = load_mesh(tri_path);
    REQUIRE(tri.has_uvs());
    CHECK(tri.corner_uvs[0][0].x == doctest::Approx(0.1));
    CHECK(tri.corner_uvs[0][2].y == doctest::Approx(0.8));

    // Two vertices 1e-7 apart weld at the default 1e-6 tolerance.
    std::string weld_path = dir.file("weld.obj");
    write_file(weld_path,
               "v 0 0 0\nv 0.0000001 0 0\nv 1 0 0\nv 0 1 0\n"
               "f 1 3 4\nf 2 4 3\n");
    WeldStats stats;
    Mesh welded = load_mesh(weld_path, 1e-6, &stats);
    CHECK(welded.vertex_count() == 3);
    CHECK(stats.merged_vertices == 1);
    CHECK(welded.face_count() == 2);
}

TEST_CASE("welding properties") {
    std::mt19937_64 rng(42);
    auto rand01 = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    Mesh m;
    for (int i = 0; i < 400; ++i) {
        // Clustered points so plenty of pairs sit under the tolerance.
        m.positions.push_back({std::floor(rand01() * 8) * 0.1 + rand01() * 1e-4,
                               std::floor(rand01() * 8) * 0.1 + rand01() * 1e-4,
                               std::floor(rand01() * 8) * 0.1 + rand01() * 1e-4});
    }
    for (int i = 0; i + 2 < 60; i += 3) {
        m.faces.push_back({{i, i + 1, i + 2}});
    }

    const double tol = 5e-4;
    Mesh once = m;
    weld_vertices(once, tol);
    CHECK(once.vertex_count() <= m.vertex_count());
    for (const Tri& t : once.faces) {
        for (int k = 0; k < 3; ++k) {
            CHECK(t[k] >= 0);
            CHECK(t[k] < once.vertex_count());
        }
    }

    // Idempotent: a second weld at the same tolerance changes nothing.
    Mesh twice = once;
    WeldStats again = weld_vertices(twice, tol);
    CHECK(again.merged_vertices == 0);
    CHECK(twice.vertex_count() == once.vertex_count());
    CHECK(twice.face_count() == once.face_count());
}

TEST_CASE("obj round trip preserves structure") {
    testutil::TempDir dir;

    Mesh original = fixtures::grid(3, true);
    std::string path = dir.file("grid.obj");
    save_mesh(original, path);
    Mesh loaded = load_mesh(path, 0.0);

    REQUIRE(loaded.vertex_count() == original.vertex_count());
    REQUIRE(loaded.face_count() == original.face_count());
    CHECK(loaded.has_uvs() == original.has_uvs());
    for (int v = 0; v < original.vertex_count(); ++v) {
        CHECK(distance(loaded.positions[v], original.positions[v]) <= 1e-6);
    }

    // No UVs: no vt records, faces in the plain form.
    Mesh bare = fixtures::tetrahedron();
    std::string bare_path = dir.file("bare.obj");
    save_mesh(bare, bare_path);
    std::string text = read_file(bare_path);
    CHECK(text.find("vt ") == std::string::npos);
    CHECK(text.find("f 1 ") != std::string::npos);
}

TEST_CASE("textured obj emits mtl and png") {
    testutil::TempDir dir;
    Mesh plane = fixtures::textured_gradient_plane(2, 32);
    std::string path = dir.file("plane.obj");
    save_mesh(plane, path);

    CHECK(std::filesystem::exists(dir.file("plane.mtl")));
    CHECK(std::filesystem::exists(dir.file("plane.png")));
    std::string text = read_file(path);
    CHECK(text.find("mtllib plane.mtl") != std::string::npos);
    CHECK(text.find("usemtl") != std::string::npos);

    Mesh reloaded = load_mesh(path);
    REQUIRE(reloaded.texture);
    CHECK(reloaded.texture->width == 32);
    CHECK(reloaded.has_uvs());
}

TEST_CASE("obj parse errors name the offending line") {
    testutil::TempDir dir;
    std::string bad = dir.file("bad.obj");
    write_file(bad, "v 0 0 0\nv 1 0 0\nf 1 2 9\n");
    CHECK_THROWS_WITH_AS(load_mesh(bad), doctest::Contains(":3"), std::runtime_error);

    CHECK_THROWS_AS(load_mesh(dir.file("missing.obj")), std::runtime_error);
    std::string weird = dir.file("mesh.xyz");
    write_file(weird, "nonsense");
    CHECK_THROWS_WITH_AS(load_mesh(weird), doctest::Contains("unsupported"),
                         std::runtime_error);
}

TEST_CASE("ply round trip, ascii and binary") {
    testutil::TempDir dir;

    Mesh m = fixtures::tetrahedron();
    m.vertex_colors = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}};
    std::string path = dir.file("tet.ply");
    save_mesh(m, path);
    Mesh loaded = load_mesh(path, 0.0);
    REQUIRE(loaded.vertex_count() == 4);
    CHECK(loaded.face_count() == 4);
    REQUIRE(loaded.has_vertex_colors());
    CHECK(loaded.vertex_colors[0].x == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(loaded.vertex_colors[1].y == doctest::Approx(1.0).epsilon(1e-2));

    // Hand-built binary little-endian file with float positions.
    std::string bin_path = dir.file("bin.ply");
    {
        std::ofstream out(bin_path, std::ios::binary);
        out << "ply\nformat binary_little_endian 1.0\n"
            << "element vertex 3\n"
            << "property float x\nproperty float y\nproperty float z\n"
            << "element face 1\n"
            << "property list uchar int vertex_indices\n"
            << "end_header\n";
        const float coords[9] = {0, 0, 0, 1, 0, 0, 0, 1, 0};
        out.write(reinterpret_cast<const char*>(coords), sizeof(coords));
        const unsigned char count = 3;
        const int32_t idx[3] = {0, 1, 2};
        out.write(reinterpret_cast<const char*>(&count), 1);
        out.write(reinterpret_cast<const char*>(idx), sizeof(idx));
    }
    Mesh bin = load_mesh(bin_path, 0.0);
    CHECK(bin.vertex_count() == 3);
    CHECK(bin.face_count() == 1);
    CHECK(bin.positions[1].x == doctest::Approx(1.0));
}

TEST_CASE("texture sampling is bilinear with repeat addressing") {
    TextureImage gray = TextureImage::solid(7, 5, {0.5, 0.5, 0.5});
    for (Vec2 uv : {Vec2{0.0, 0.0}, Vec2{0.37, 0.91}, Vec2{-1.3, 2.7}}) {
        Vec3 c = sample_texture(gray, uv);
        CHECK(c.x == doctest::Approx(0.5).epsilon(2e-3));
        CHECK(c.y == doctest::Approx(0.5).epsilon(2e-3));
    }

    // 2x1 black|white: exact at texel centers, averaged midway.
    TextureImage bw;
    bw.width = 2;
    bw.height = 1;
    bw.channels = 3;
    bw.pixels = {0, 0, 0, 255, 255, 255};
    CHECK(sample_texture(bw, {0.25, 0.5}).x == doctest::Approx(0.0));
    CHECK(sample_texture(bw, {0.75, 0.5}).x == doctest::Approx(1.0));
    CHECK(sample_texture(bw, {0.5, 0.5}).x == doctest::Approx(0.5));
}

TEST_CASE("png round trip") {
    testutil::TempDir dir;
    TextureImage img = fixtures::gradient_texture(16, 9);
    std::string path = dir.file("img.png");
    save_png(img, path);
    TextureImage back = load_png(path);
    REQUIRE(back.width == 16);
    REQUIRE(back.height == 9);
    for (int x = 0; x < 16; ++x) {
        CHECK(back.at(x, 4, 0) == img.at(x, 4, 0));
    }
}
