#include <doctest.h>

#include <cmath>
#include <random>

#include "faqem/area_quadric.hpp"
#include "faqem/edge_cost.hpp"
#include "faqem/feature_quadrics.hpp"
#include "faqem/fixtures.hpp"
#include "faqem/quadric.hpp"
#include "oracles.hpp"

using namespace faqem;

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

Vec3 random_point(std::mt19937_64& rng, double extent = 2.0) {
    return {uniform(rng, -extent, extent), uniform(rng, -extent, extent),
            uniform(rng, -extent, extent)};
}

}  // namespace

TEST_CASE("plane quadric evaluates squared plane distance") {
    Quadric q = plane_quadric({{0, 0, 1}, 0});
    CHECK(q.eval({3.0, -7.0, 2.5}) == doctest::Approx(6.25).epsilon(1e-14));

    q = plane_quadric({{1, 0, 0}, -1});
    CHECK(q.eval({3, 0, 0}) == doctest::Approx(4.0).epsilon(1e-14));

    // Unnormalized normals scale the value by |n|^2.
    q = plane_quadric({{0, 2, 0}, 0});
    CHECK(q.eval({0, 1, 0}) == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("plane quadric exactness on random planes and points") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 1000; ++i) {
        Vec3 n = random_point(rng);
        double d = uniform(rng, -2, 2);
        Vec3 v = random_point(rng);
        double direct = dot(n, v) + d;
        direct *= direct;
        double via_quadric = plane_quadric({n, d}).eval(v);
        CHECK(std::fabs(via_quadric - direct) <= 1e-12 * std::max(1.0, std::fabs(direct)));
    }
}

TEST_CASE("eval basics and additivity") {
    CHECK(Quadric{}.eval({1, 2, 3}) == 0.0);

    Quadric q = plane_quadric({{0, 0, 1}, 0}) + plane_quadric({{0, 0, 1}, -2});
    CHECK(q.eval({0, 0, 1}) == doctest::Approx(2.0).epsilon(1e-14));

    CHECK(plane_quadric({{1, 0, 0}, 0}).eval({-2, 5, 7}) == doctest::Approx(4.0).epsilon(1e-14));

    std::mt19937_64 rng(13);
    for (int i = 0; i < 200; ++i) {
        Quadric a = plane_quadric({random_point(rng), uniform(rng, -1, 1)});
        Quadric b = plane_quadric({random_point(rng), uniform(rng, -1, 1)});
        Vec3 v = random_point(rng);
        double sum = (a + b).eval(v);
        double parts = a.eval(v) + b.eval(v);
        CHECK(std::fabs(sum - parts) <= 1e-12 * std::max(1.0, std::fabs(parts)));
    }
}

TEST_CASE("nonnegative plane combinations stay PSD under evaluation") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        Quadric q;
        for (int p = 0; p < 5; ++p) {
            q += plane_quadric({random_point(rng), uniform(rng, -1, 1)}) *
                 uniform(rng, 0.0, 3.0);
        }
        for (int i = 0; i < 100; ++i) {
            CHECK(q.eval(random_point(rng, 5.0)) >= -1e-9);
        }
    }
}

TEST_CASE("base quadric uses inverse-area weighting") {
    // Unit square at the origin split along its diagonal; both triangles
    // touch vertex 0 and have area 1/2.
    Mesh m;
    m.positions = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
    m.faces = {{{0, 1, 2}}, {{0, 2, 3}}};
    Adjacency adj = build_adjacency(m);

    Quadric q = base_quadric(m, adj, 0, 1.0);
    for (double h : {0.25, 1.0, 3.0}) {
        CHECK(q.eval({0, 0, h}) == doctest::Approx(4.0 * h * h).epsilon(1e-12));
    }

    // Scaling the geometry by 2 quadruples areas, halving each term twice.
    Mesh big = m;
    for (Vec3& p : big.positions) p = p * 2.0;
    Quadric qb = base_quadric(big, adj, 0, 1.0);
    CHECK(qb.eval({0, 0, 1.0}) == doctest::Approx(1.0).epsilon(1e-12));

    // Single incident face: zero error anywhere on the face plane.
    Mesh single;
    single.positions = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
    single.faces = {{{0, 1, 2}}};
    Adjacency sadj = build_adjacency(single);
    Quadric qs = base_quadric(single, sadj, 0, 1.0);
    CHECK(qs.eval({0.3, 0.2, 0.0}) == doctest::Approx(0.0).epsilon(1e-12));

    // w_plane_area <= 0 switches to uniform plane sums.
    Quadric uniform_q = base_quadric(m, adj, 0, 0.0);
    CHECK(uniform_q.eval({0, 0, 1.0}) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("boundary curvature matches direct evaluation") {
    // Collinear chain: exactly zero.
    CHECK(boundary_curvature({0, 0, 0}, {-1, 0, 0}, {1, 0, 0}) == 0.0);

    // Right-angle chain.
    double kappa = boundary_curvature({0, 0, 0}, {-1, 0, 0}, {0, 1, 0});
    CHECK(kappa == doctest::Approx(2.0 / std::pow(std::sqrt(2.0), 3)).epsilon(1e-12));

    // Coarse sampling of the unit circle.
    kappa = boundary_curvature({0, 1, 0}, {1, 0, 0}, {-1, 0, 0});
    CHECK(kappa == doctest::Approx(0.5).epsilon(1e-12));

    // 100 random well-conditioned chains against the long-double oracle.
    std::mt19937_64 rng(1234);
    int tested = 0;
    while (tested < 100) {
        Vec3 v1 = random_point(rng), v2 = random_point(rng), v3 = random_point(rng);
        Vec3 d1 = v3 - v2;
        Vec3 c = cross(d1, v3 - 2.0 * v1 + v2);
        if (norm(d1) < 1e-2 || norm(c) < 1e-3 * norm(d1)) continue;  // skip near-degenerate
        double got = boundary_curvature(v1, v2, v3);
        double want = oracle::chain_curvature_ld(v1, v2, v3);
        CHECK(std::fabs(got - want) <= 1e-10 * std::fabs(want));
        ++tested;
    }

    // Exactly-representable collinear chains must return exactly zero.
    std::mt19937_64 rng2(77);
    for (int i = 0; i < 50; ++i) {
        Vec3 v2{std::floor(uniform(rng2, -8, 8)), std::floor(uniform(rng2, -8, 8)),
                std::floor(uniform(rng2, -8, 8))};
        Vec3 v3{std::floor(uniform(rng2, -8, 8)), std::floor(uniform(rng2, -8, 8)),
                std::floor(uniform(rng2, -8, 8))};
        Vec3 v1 = (v2 + v3) * 0.5;
        CHECK(boundary_curvature(v1, v2, v3) == 0.0);
    }
}

TEST_CASE("boundary quadric dual-plane construction") {
    // Collinear chain: zero quadric.
    Quadric q = boundary_quadric({0, 0, 0}, {-1, 0, 0}, {1, 0, 0}, 500.0);
    CHECK(q.is_zero());

    const Vec3 v1{0, 0, 0}, v2{-1, 0, 0}, v3{0, 1, 0};
    const double w = 500.0;
    q = boundary_quadric(v1, v2, v3, w);

    // Both planes pass through v1.
    CHECK(q.eval(v1) == doctest::Approx(0.0).epsilon(1e-12));

    // Hand-expanded value one unit along the chain-triangle normal.
    double kappa = boundary_curvature(v1, v2, v3);
    Vec3 n1 = cross(v1 - v2, v3 - v1);
    Vec3 d = v1 - v2;
    Vec3 probe = v1 + normalized(n1);
    double expected = w * kappa * (norm2(n1) + std::pow(dot(d, n1) / norm(n1), 2));
    CHECK(q.eval(probe) == doctest::Approx(expected).epsilon(1e-12));

    // Linear in the boundary weight.
    Quadric q2 = boundary_quadric(v1, v2, v3, 2.0 * w);
    Vec3 p = {0.3, -0.8, 0.4};
    CHECK(q2.eval(p) == doctest::Approx(2.0 * q.eval(p)).epsilon(1e-12));
}

TEST_CASE("normal quadric penalizes offsets along the normal") {
    Quadric q = normal_quadric({0, 0, 0}, {0, 0, 1}, 0.01);
    CHECK(q.eval({0, 0, 1}) == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(q.eval({5, -3, 0}) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(normal_quadric({0, 0, 0}, {0, 0, 1}, 0.0).is_zero());
    CHECK(normal_quadric({0, 0, 0}, {0, 0, 0}, 0.01).is_zero());
}

TEST_CASE("composite vertex quadric") {
    // Interior vertex of a flat grid with the normal term off: zero error
    // anywhere in the plane.
    Mesh m = fixtures::grid(4);
    Adjacency adj = build_adjacency(m);
    EdgeClassification classes = classify_edges(m);
    WeightSet w;
    w.w_normal = 0.0;
    int interior = -1;
    for (int v = 0; v < m.vertex_count(); ++v) {
        if (!boundary_chain_neighbors(adj, classes, v) && adj.v_to_t[v].size() == 6) {
            interior = v;
            break;
        }
    }
    REQUIRE(interior >= 0);
    Quadric q = gf_quadric(m, adj, classes, interior, w);
    CHECK(q.eval({0.123, 0.456, 0.0}) == doctest::Approx(0.0).epsilon(1e-12));

    // All weights zero with unit plane-area weight reduces to the plain
    // inverse-area sum.
    WeightSet zero_w = WeightSet::zero();
    zero_w.w_plane_area = 1.0;
    Quadric a = gf_quadric(m, adj, classes, interior, zero_w);
    Quadric b = base_quadric(m, adj, interior, 1.0);
    Vec3 probe{0.2, 0.7, 0.9};
    CHECK(a.eval(probe) == doctest::Approx(b.eval(probe)).epsilon(1e-14));

    // Boundary corner: composite minus base minus normal equals the
    // boundary term, coefficient-wise.
    WeightSet full;
    int corner = 0;  // grid corner vertex has two boundary neighbors
    auto chain = boundary_chain_neighbors(adj, classes, corner);
    REQUIRE(chain.has_value());
    Quadric total = gf_quadric(m, adj, classes, corner, full);
    Quadric base = base_quadric(m, adj, corner, full.w_plane_area);
    Quadric normal = normal_quadric(m.positions[corner],
                                    vertex_normal_estimate(m, adj, corner), full.w_normal);
    Quadric boundary = boundary_quadric(m.positions[corner], m.positions[chain->first],
                                        m.positions[chain->second], full.w_boundary);
    Quadric residual = total + (base + normal + boundary) * -1.0;
    CHECK(std::fabs(residual.a00) <= 1e-12);
    CHECK(std::fabs(residual.a03) <= 1e-12);
    CHECK(std::fabs(residual.a33) <= 1e-12);
}

TEST_CASE("area quadric sweeps zero at collinear points") {
    // Interior edges of a closed mesh contribute nothing.
    Mesh tet = fixtures::tetrahedron();
    Adjacency adj = build_adjacency(tet);
    EdgeClassification classes = classify_edges(tet);
    Quadric q = area_quadric(tet, adj, classes, 0, 1);
    CHECK(q.is_zero());

    // Per-edge swept cost for the unit edge.
    Quadric edge = area_edge_quadric({0, 0, 0}, {1, 0, 0});
    CHECK(edge.eval({0, 0, 0}) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(edge.eval({1, 0, 0}) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(edge.eval({0.5, 0, 0}) == doctest::Approx(0.0).epsilon(1e-15));
    for (double h : {0.1, 1.0, 10.0}) {
        CHECK(std::fabs(edge.eval({0.5, h, 0}) - 0.5 * h * h) <= 1e-9);
    }

    // Collinear configurations in general position.
    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i) {
        Vec3 a = random_point(rng), b = random_point(rng);
        double t = uniform(rng, -2, 2);
        Vec3 on_line = a + (b - a) * t;
        double cost = area_edge_quadric(a, b).eval(on_line);
        CHECK(std::fabs(cost) <= 1e-12 * std::max(1.0, norm2(b - a) * norm2(on_line)));
    }

    // Symmetric in the edge direction.
    Vec3 probe{0.4, 1.3, -0.2};
    CHECK(area_edge_quadric({0, 0, 0}, {1, 0, 0}).eval(probe) ==
          doctest::Approx(area_edge_quadric({1, 0, 0}, {0, 0, 0}).eval(probe)).epsilon(1e-14));
}

TEST_CASE("optimal position solves or falls back") {
    // Three orthogonal planes meet at the origin.
    Quadric q = plane_quadric({{1, 0, 0}, 0}) + plane_quadric({{0, 1, 0}, 0}) +
                plane_quadric({{0, 0, 1}, 0});
    OptimalPlacement p = optimal_position(q, {1, 1, 1}, {-1, -1, 2});
    CHECK(p.source == PlacementSource::Solved);
    CHECK(norm(p.position) <= 1e-9);
    CHECK(p.cost <= 1e-12);

    // Parallel planes z=0, z=2: singular in x and y, midpoint wins.
    q = plane_quadric({{0, 0, 1}, 0}) + plane_quadric({{0, 0, 1}, -2});
    p = optimal_position(q, {0, 0, 0}, {0, 0, 2});
    CHECK(p.source == PlacementSource::FallbackMid);
    CHECK(p.position.z == doctest::Approx(1.0));
    CHECK(p.cost == doctest::Approx(2.0).epsilon(1e-12));

    // Zero quadric: fallback, zero cost; ties resolve to the midpoint.
    p = optimal_position(Quadric{}, {1, 2, 3}, {4, 5, 6});
    CHECK(p.source == PlacementSource::FallbackMid);
    CHECK(p.cost == 0.0);
}

TEST_CASE("solver stationarity and fallback dominance on random quadrics") {
    std::mt19937_64 rng(31337);
    for (int i = 0; i < 500; ++i) {
        Quadric q;
        int planes = 3 + static_cast<int>(rng() % 4);
        for (int p = 0; p < planes; ++p) {
            q += plane_quadric({random_point(rng), uniform(rng, -1, 1)});
        }
        Vec3 vi = random_point(rng), vj = random_point(rng);
        OptimalPlacement placement = optimal_position(q, vi, vj);

        double fallback_best = std::min({q.eval(vi), q.eval(vj), q.eval((vi + vj) * 0.5)});
        CHECK(placement.cost <= fallback_best + 1e-9);

        if (placement.source == PlacementSource::Solved) {
            Vec3 g = oracle::fd_gradient(q, placement.position);
            double scale = 1.0 + std::fabs(q.a03) + std::fabs(q.a13) + std::fabs(q.a23);
            CHECK(std::fabs(g.x) <= 1e-5 * scale);
            CHECK(std::fabs(g.y) <= 1e-5 * scale);
            CHECK(std::fabs(g.z) <= 1e-5 * scale);
        }
    }
}

TEST_CASE("edge cost combines terms and prices degenerate edges out") {
    Mesh m = fixtures::grid(4);
    Adjacency adj = build_adjacency(m);
    EdgeClassification classes = classify_edges(m);
    std::vector<char> seams(m.vertex_count(), 0);
    double degenerate_len = 1e-8 * m.bbox_diagonal();

    WeightSet zero = WeightSet::zero();
    std::vector<Quadric> gf(m.vertex_count());
    for (int v = 0; v < m.vertex_count(); ++v) {
        gf[v] = gf_quadric(m, adj, classes, v, zero);
    }

    // Interior edge of a flat grid with the plain configuration: free.
    int a = -1, b = -1;
    for (const auto& [key, count] : classes.face_count) {
        if (count == 2) {
            auto [x, y] = edge_key_unpack(key);
            if (!classes.is_boundary(x, y)) { a = x; b = y; break; }
        }
    }
    REQUIRE(a >= 0);
    EdgeCostResult r = edge_cost(m, adj, classes, a, b, gf, zero, seams, degenerate_len);
    CHECK(r.total <= 1e-12);

    // Degenerate edge: infinite sentinel.
    Mesh tiny;
    tiny.positions = {{0, 0, 0}, {1e-12, 0, 0}, {1, 0.5, 0}, {0, 1, 0}};
    tiny.faces = {{{0, 1, 2}}, {{0, 2, 3}}};
    Adjacency tadj = build_adjacency(tiny);
    EdgeClassification tcls = classify_edges(tiny);
    std::vector<Quadric> tgf(4);
    std::vector<char> tseams(4, 0);
    EdgeCostResult tiny_cost =
        edge_cost(tiny, tadj, tcls, 0, 1, tgf, zero, tseams, 1e-8 * tiny.bbox_diagonal());
    CHECK(tiny_cost.is_infinite());
    CHECK(tiny_cost.degenerate);

    // With standard weights, pulling a rim vertex inward costs strictly
    // more than an interior collapse: the area term is positive only for
    // the boundary edge.
    WeightSet standard;
    for (int v = 0; v < m.vertex_count(); ++v) {
        gf[v] = gf_quadric(m, adj, classes, v, standard);
    }
    int rim = -1, inner = -1;
    for (int v = 0; v < m.vertex_count() && rim < 0; ++v) {
        if (!boundary_chain_neighbors(adj, classes, v)) continue;
        for (int n : adj.v_to_v[v]) {
            if (!boundary_chain_neighbors(adj, classes, n) && adj.v_to_t[n].size() == 6) {
                rim = v;
                inner = n;
                break;
            }
        }
    }
    REQUIRE(rim >= 0);
    Quadric spoke_area = area_quadric(m, adj, classes, rim, inner);
    Vec3 inward = m.positions[inner];
    double boundary_inward_cost = (gf[rim] + gf[inner]).eval(inward) +
                                  standard.w_area * spoke_area.eval(inward);
    EdgeCostResult interior =
        edge_cost(m, adj, classes, a, b, gf, standard, seams, degenerate_len);
    CHECK(spoke_area.eval(inward) > 0.0);
    CHECK(boundary_inward_cost > interior.total);

    // Seam endpoints multiply the cost.
    Mesh seam_mesh = fixtures::cube_six_charts();
    Adjacency sadj = build_adjacency(seam_mesh);
    EdgeClassification scls = classify_edges(seam_mesh);
    std::vector<Quadric> sgf(seam_mesh.vertex_count());
    WeightSet with_uv = standard;
    for (int v = 0; v < seam_mesh.vertex_count(); ++v) {
        sgf[v] = gf_quadric(seam_mesh, sadj, scls, v, with_uv);
    }
    std::vector<char> seam_flags(seam_mesh.vertex_count(), 0);
    EdgeCostResult plain = edge_cost(seam_mesh, sadj, scls, 0, 1, sgf, with_uv, seam_flags,
                                     1e-8 * seam_mesh.bbox_diagonal());
    seam_flags[0] = 1;
    EdgeCostResult seamed = edge_cost(seam_mesh, sadj, scls, 0, 1, sgf, with_uv, seam_flags,
                                      1e-8 * seam_mesh.bbox_diagonal());
    CHECK(seamed.total == doctest::Approx(plain.total * with_uv.w_uv).epsilon(1e-12));
}
