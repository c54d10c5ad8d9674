#include "faqem/texture_transfer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "faqem/kdtree.hpp"
#include "faqem/topology.hpp"

namespace faqem {

namespace {

// Centroids of the k^2 sub-triangles of a regular barycentric subdivision,
// as (b1, b2) pairs. Row-major, upward triangles before the interleaved
// downward ones, so enumeration is deterministic.
std::vector<Vec2> subdivision_centroids(int k) {
    std::vector<Vec2> out;
    out.reserve(static_cast<size_t>(k) * k);
    double inv = 1.0 / (3.0 * k);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j + i < k; ++j) {
            out.push_back({(3.0 * j + 1.0) * inv, (3.0 * i + 1.0) * inv});
        }
        for (int j = 0; j + i + 1 < k; ++j) {
            out.push_back({(3.0 * j + 2.0) * inv, (3.0 * i + 2.0) * inv});
        }
    }
    return out;
}

Vec3 color_on_original(const Mesh& mesh, int face, const Vec3& point) {
    const Tri& t = mesh.faces[face];
    double b0, b1, b2;
    barycentric_coordinates(point, mesh.positions[t[0]], mesh.positions[t[1]],
                            mesh.positions[t[2]], b0, b1, b2);
    b0 = std::clamp(b0, 0.0, 1.0);
    b1 = std::clamp(b1, 0.0, 1.0);
    b2 = std::clamp(b2, 0.0, 1.0);
    double sum = b0 + b1 + b2;
    if (sum > 0.0) {
        b0 /= sum; b1 /= sum; b2 /= sum;
    } else {
        b0 = 1.0; b1 = b2 = 0.0;
    }
    if (mesh.texture && mesh.has_uvs()) {
        const auto& uv = mesh.corner_uvs[face];
        Vec2 q{b0 * uv[0].x + b1 * uv[1].x + b2 * uv[2].x,
               b0 * uv[0].y + b1 * uv[1].y + b2 * uv[2].y};
        return sample_texture(*mesh.texture, q);
    }
    return mesh.vertex_colors[t[0]] * b0 + mesh.vertex_colors[t[1]] * b1 +
           mesh.vertex_colors[t[2]] * b2;
}

}  // namespace

std::vector<SurfaceSample> sample_simplified_surface(const Mesh& simplified,
                                                     const std::vector<int>& vertex_origin,
                                                     long total_budget) {
    if (total_budget < 1) throw std::runtime_error("sample budget must be >= 1");
    const int nf = simplified.face_count();

    std::vector<double> areas(nf);
    double total_area = 0.0;
    for (int f = 0; f < nf; ++f) {
        areas[f] = simplified.face_area(f);
        total_area += areas[f];
    }
    if (total_area <= 0.0) return {};

    // Largest-remainder allocation, at least one sample per positive face.
    std::vector<long> counts(nf, 0);
    std::vector<std::pair<double, int>> remainders;
    long assigned = 0;
    for (int f = 0; f < nf; ++f) {
        if (areas[f] <= 0.0) continue;
        double exact = static_cast<double>(total_budget) * areas[f] / total_area;
        counts[f] = std::max(1L, static_cast<long>(std::floor(exact)));
        assigned += counts[f];
        remainders.push_back({exact - std::floor(exact), f});
    }
    std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    for (size_t i = 0; assigned < total_budget && i < remainders.size(); ++i, ++assigned) {
        counts[remainders[i].second]++;
    }

    std::vector<SurfaceSample> samples;
    samples.reserve(static_cast<size_t>(std::max(assigned, total_budget)));
    for (int f = 0; f < nf; ++f) {
        long n = counts[f];
        if (n <= 0) continue;
        int k = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
        std::vector<Vec2> cells = subdivision_centroids(k);
        long m = static_cast<long>(cells.size());

        const Tri& t = simplified.faces[f];
        const Vec3& p0 = simplified.positions[t[0]];
        const Vec3& p1 = simplified.positions[t[1]];
        const Vec3& p2 = simplified.positions[t[2]];

        for (long s = 0; s < n; ++s) {
            const Vec2& c = cells[static_cast<size_t>(s * m / n)];
            SurfaceSample sample;
            sample.face = f;
            sample.b1 = c.x;
            sample.b2 = c.y;
            sample.b0 = 1.0 - c.x - c.y;
            sample.position = p0 * sample.b0 + p1 * sample.b1 + p2 * sample.b2;

            double d0 = norm2(sample.position - p0);
            double d1 = norm2(sample.position - p1);
            double d2 = norm2(sample.position - p2);
            int corner = 0;
            if (d1 < d0 && d1 <= d2) corner = 1;
            else if (d2 < d0 && d2 < d1) corner = 2;
            sample.anchor = vertex_origin[t[corner]];
            samples.push_back(sample);
        }
    }
    return samples;
}

Correspondence successive_map(const Mesh& original, const CollapseHistory& history,
                              const std::vector<SurfaceSample>& samples,
                              const std::vector<int>& original_alive_hint) {
    Correspondence corr;
    corr.has_colors = original.has_appearance();
    corr.items.resize(samples.size());

    std::vector<char> alive(original.positions.size(), 0);
    for (int v : original_alive_hint) {
        if (v < 0 || static_cast<size_t>(v) >= alive.size()) {
            throw std::runtime_error("alive hint references a vertex outside the original mesh");
        }
        alive[v] = 1;
    }

    // Samples bucketed by current anchor.
    std::unordered_map<int, std::vector<int>> buckets;
    for (size_t i = 0; i < samples.size(); ++i) {
        int a = samples[i].anchor;
        if (a < 0 || static_cast<size_t>(a) >= alive.size() || !alive[a]) {
            throw std::runtime_error("sample anchored at a vertex not alive in the history");
        }
        buckets[a].push_back(static_cast<int>(i));
    }
    std::vector<int> anchor_of(samples.size());
    for (size_t i = 0; i < samples.size(); ++i) anchor_of[i] = samples[i].anchor;

    for (auto it = history.rbegin(); it != history.rend(); ++it) {
        const CollapseRecord& rec = *it;
        if (rec.kept < 0 || static_cast<size_t>(rec.kept) >= alive.size() ||
            rec.removed < 0 || static_cast<size_t>(rec.removed) >= alive.size() ||
            !alive[rec.kept] || alive[rec.removed]) {
            throw std::runtime_error("collapse history does not match this mesh");
        }
        alive[rec.removed] = 1;
        ++corr.stages_reversed;

        auto bucket_it = buckets.find(rec.kept);
        if (bucket_it == buckets.end()) continue;
        std::vector<int>& kept_bucket = bucket_it->second;
        std::vector<int> stays;
        stays.reserve(kept_bucket.size());
        for (int idx : kept_bucket) {
            const Vec3& p = samples[idx].position;
            double d_kept = norm2(p - rec.kept_old_position);
            double d_removed = norm2(p - rec.removed_old_position);
            if (d_removed < d_kept) {  // ties stay with the kept parent
                anchor_of[idx] = rec.removed;
                buckets[rec.removed].push_back(idx);
            } else {
                stays.push_back(idx);
            }
        }
        buckets[rec.kept] = std::move(stays);
    }

    Adjacency adj = build_adjacency(original);
    for (size_t i = 0; i < samples.size(); ++i) {
        int a = anchor_of[i];
        corr.items[i].anchor = a;

        const Vec3& p = samples[i].position;
        Vec3 best_point = original.positions[a];
        int best_face = -1;
        double best_sq = norm2(p - best_point);
        for (int f : adj.v_to_t[a]) {
            const Tri& t = original.faces[f];
            Vec3 q = closest_point_on_triangle(p, original.positions[t[0]],
                                               original.positions[t[1]],
                                               original.positions[t[2]]);
            double sq = norm2(p - q);
            if (sq < best_sq || best_face < 0) {
                best_sq = sq;
                best_point = q;
                best_face = f;
            }
        }
        corr.items[i].point = best_point;
        if (corr.has_colors && best_face >= 0) {
            corr.items[i].color = color_on_original(original, best_face, best_point);
        }
    }
    return corr;
}

namespace {

struct FlatChart {
    Vec2 corners[3];
    double width = 0.0, height = 0.0;
};

FlatChart flatten_face(const Mesh& mesh, int f) {
    const Tri& t = mesh.faces[f];
    const Vec3& a = mesh.positions[t[0]];
    const Vec3& b = mesh.positions[t[1]];
    const Vec3& c = mesh.positions[t[2]];

    Vec3 e01 = b - a, e02 = c - a;
    double len01 = norm(e01);
    FlatChart chart;
    chart.corners[0] = {0.0, 0.0};
    chart.corners[1] = {len01, 0.0};
    if (len01 > 0.0) {
        Vec3 u = e01 / len01;
        double px = dot(e02, u);
        double py = std::sqrt(std::max(0.0, norm2(e02) - px * px));
        chart.corners[2] = {px, py};
    } else {
        chart.corners[2] = {0.0, norm(e02)};
    }
    // Shift so every corner is non-negative.
    double min_x = std::min({chart.corners[0].x, chart.corners[1].x, chart.corners[2].x});
    for (Vec2& q : chart.corners) q.x -= min_x;
    chart.width = std::max({chart.corners[0].x, chart.corners[1].x, chart.corners[2].x});
    chart.height = std::max({chart.corners[0].y, chart.corners[1].y, chart.corners[2].y});
    return chart;
}

constexpr int kGutter = 2;
constexpr int kMaxResolution = 4096;

struct PackedBox {
    int x = 0, y = 0, w = 0, h = 0;
    bool placed = false;
};

// Shelf packing of padded chart boxes, tallest first. Returns false when
// the layout does not fit in res x res.
bool shelf_pack(const std::vector<FlatChart>& charts, double scale, int res,
                std::vector<PackedBox>& boxes) {
    boxes.assign(charts.size(), {});
    std::vector<int> order(charts.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return charts[a].height > charts[b].height;
    });

    int x = 0, y = 0, shelf_h = 0;
    for (int idx : order) {
        if (charts[idx].width <= 0.0 && charts[idx].height <= 0.0) continue;  // degenerate
        int w = static_cast<int>(std::ceil(charts[idx].width * scale)) + 1 + 2 * kGutter;
        int h = static_cast<int>(std::ceil(charts[idx].height * scale)) + 1 + 2 * kGutter;
        if (w > res || h > res) return false;
        if (x + w > res) {
            y += shelf_h;
            x = 0;
            shelf_h = 0;
        }
        if (y + h > res) return false;
        boxes[idx] = {x, y, w, h, true};
        x += w;
        shelf_h = std::max(shelf_h, h);
    }
    return true;
}

}  // namespace

BakedAtlas bake_atlas(Mesh& simplified, const Correspondence& corr,
                      const std::vector<SurfaceSample>& samples, int resolution) {
    if (!corr.has_colors) throw std::runtime_error("bake_atlas: no appearance data to transfer");
    if (corr.items.size() != samples.size()) {
        throw std::runtime_error("bake_atlas: correspondence does not match the sample list");
    }
    if (resolution < 16) throw std::runtime_error("bake_atlas: resolution must be >= 16");
    const int nf = simplified.face_count();
    if (nf == 0) throw std::runtime_error("bake_atlas: empty mesh");

    std::vector<FlatChart> charts(nf);
    double total_flat_area = 0.0;
    for (int f = 0; f < nf; ++f) {
        charts[f] = flatten_face(simplified, f);
        total_flat_area += 0.5 * charts[f].width * charts[f].height;
    }
    if (total_flat_area <= 0.0) throw std::runtime_error("bake_atlas: all faces degenerate");

    double max_dim = 0.0;
    for (const FlatChart& c : charts) max_dim = std::max({max_dim, c.width, c.height});

    // Find a resolution and scale where every chart fits. The scale aims
    // at a fill fraction of the atlas but is capped so the widest chart
    // fits on its own; sliver-dominated meshes hit the cap.
    int res = resolution;
    double scale = 0.0;
    std::vector<PackedBox> boxes;
    bool packed = false;
    const double fill_target = 0.45;
    while (!packed && res <= kMaxResolution) {
        double s = std::sqrt(fill_target * res * res / total_flat_area);
        if (max_dim > 0.0) {
            s = std::min(s, (res - 2.0 * kGutter - 2.0) / max_dim);
        }
        for (int attempt = 0; attempt < 8 && !packed; ++attempt) {
            if (shelf_pack(charts, s, res, boxes)) {
                packed = true;
                scale = s;
            } else {
                s *= 0.8;
            }
        }
        if (!packed) res *= 2;
    }
    if (!packed) {
        throw std::runtime_error("bake_atlas: charts do not fit even at " +
                                 std::to_string(kMaxResolution) + " texels");
    }

    BakedAtlas atlas;
    atlas.resolution = res;
    atlas.image.width = res;
    atlas.image.height = res;
    atlas.image.channels = 3;
    atlas.image.pixels.assign(static_cast<size_t>(res) * res * 3, 0);
    atlas.charts.resize(nf);

    // Samples grouped by face.
    std::vector<std::vector<int>> face_samples(nf);
    for (size_t i = 0; i < samples.size(); ++i) {
        if (samples[i].face >= 0 && samples[i].face < nf) {
            face_samples[samples[i].face].push_back(static_cast<int>(i));
        }
    }

    simplified.corner_uvs.assign(nf, {});
    std::vector<double> best_sq;
    std::vector<int> fill_order;
    for (int f = 0; f < nf; ++f) {
        const PackedBox& box = boxes[f];
        ChartPlacement& place = atlas.charts[f];
        place.x = box.x;
        place.y = box.y;
        place.w = box.w;
        place.h = box.h;
        // Chart-local corner positions in texels (gutter offset included).
        for (int k = 0; k < 3; ++k) {
            place.corner_uv[k] = {charts[f].corners[k].x * scale + kGutter + 0.5,
                                  charts[f].corners[k].y * scale + kGutter + 0.5};
            double u = (box.x + place.corner_uv[k].x) / res;
            double v = 1.0 - (box.y + place.corner_uv[k].y) / res;
            simplified.corner_uvs[f][k] = {u, v};
        }
        if (!box.placed) continue;

        // Splat samples; each texel keeps the sample nearest its center.
        const size_t texels = static_cast<size_t>(box.w) * box.h;
        best_sq.assign(texels, std::numeric_limits<double>::max());
        std::vector<Vec3> color(texels);
        std::vector<char> filled(texels, 0);
        for (int idx : face_samples[f]) {
            const SurfaceSample& s = samples[idx];
            double qx = s.b0 * place.corner_uv[0].x + s.b1 * place.corner_uv[1].x +
                        s.b2 * place.corner_uv[2].x;
            double qy = s.b0 * place.corner_uv[0].y + s.b1 * place.corner_uv[1].y +
                        s.b2 * place.corner_uv[2].y;
            int tx = std::clamp(static_cast<int>(qx), 0, box.w - 1);
            int ty = std::clamp(static_cast<int>(qy), 0, box.h - 1);
            double dx = qx - (tx + 0.5), dy = qy - (ty + 0.5);
            double sq = dx * dx + dy * dy;
            size_t at = static_cast<size_t>(ty) * box.w + tx;
            if (sq < best_sq[at]) {
                best_sq[at] = sq;
                color[at] = corr.items[idx].color;
                filled[at] = 1;
            }
        }

        // Breadth-first dilation fills the rest of the chart box, which
        // doubles as the gutter fill.
        fill_order.clear();
        for (size_t i = 0; i < texels; ++i) {
            if (filled[i]) fill_order.push_back(static_cast<int>(i));
        }
        for (size_t head = 0; head < fill_order.size(); ++head) {
            int at = fill_order[head];
            int tx = at % box.w, ty = at / box.w;
            const int nx[4] = {tx - 1, tx + 1, tx, tx};
            const int ny[4] = {ty, ty, ty - 1, ty + 1};
            for (int k = 0; k < 4; ++k) {
                if (nx[k] < 0 || nx[k] >= box.w || ny[k] < 0 || ny[k] >= box.h) continue;
                size_t nat = static_cast<size_t>(ny[k]) * box.w + nx[k];
                if (!filled[nat]) {
                    filled[nat] = 1;
                    color[nat] = color[at];
                    fill_order.push_back(static_cast<int>(nat));
                }
            }
        }

        for (int ty = 0; ty < box.h; ++ty) {
            for (int tx = 0; tx < box.w; ++tx) {
                size_t at = static_cast<size_t>(ty) * box.w + tx;
                if (filled[at]) atlas.image.set_rgb(box.x + tx, box.y + ty, color[at]);
            }
        }
    }

    simplified.texture = std::make_shared<TextureImage>(atlas.image);
    if (simplified.material_name.empty()) simplified.material_name = "material0";
    return atlas;
}

void bake_vertex_colors(Mesh& simplified, const Correspondence& corr,
                        const std::vector<SurfaceSample>& samples) {
    if (!corr.has_colors) {
        throw std::runtime_error("bake_vertex_colors: no appearance data to transfer");
    }
    if (samples.empty()) throw std::runtime_error("bake_vertex_colors: no samples");
    if (corr.items.size() != samples.size()) {
        throw std::runtime_error("bake_vertex_colors: correspondence does not match samples");
    }

    std::vector<KdTree<3>::Point> pts;
    pts.reserve(samples.size());
    for (const SurfaceSample& s : samples) {
        pts.push_back({s.position.x, s.position.y, s.position.z});
    }
    KdTree<3> tree(std::move(pts));

    simplified.vertex_colors.resize(simplified.positions.size());
    for (size_t v = 0; v < simplified.positions.size(); ++v) {
        const Vec3& p = simplified.positions[v];
        int nearest = tree.nearest({p.x, p.y, p.z});
        simplified.vertex_colors[v] = corr.items[nearest].color;
    }
}

}  // namespace faqem
