#include "faqem/simplify.hpp"

#include <algorithm>
#include <chrono>
#include <queue>

#include "faqem/area_quadric.hpp"
#include "faqem/edge_cost.hpp"
#include "faqem/virtual_edges.hpp"

namespace faqem {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Candidate {
    double cost = 0.0;
    int a = -1, b = -1;  // a < b
    Vec3 target;
    uint32_t stamp_a = 0, stamp_b = 0;
};

// Min-heap by (cost, a, b); index order breaks cost ties so runs are
// deterministic.
struct CandidateAfter {
    bool operator()(const Candidate& x, const Candidate& y) const {
        if (x.cost != y.cost) return x.cost > y.cost;
        if (x.a != y.a) return x.a > y.a;
        return x.b > y.b;
    }
};

class CollapseEngine {
public:
    CollapseEngine(const Mesh& input, const SimplifyConfig& config)
        : mesh_(input), config_(config) {}

    SimplifyResult run() {
        SimplifyResult out;
        const int input_faces = mesh_.face_count();
        if (config_.target_faces >= input_faces) {
            out.mesh = mesh_;
            out.vertex_origin.resize(mesh_.positions.size());
            out.face_origin.resize(mesh_.faces.size());
            for (size_t i = 0; i < out.vertex_origin.size(); ++i) out.vertex_origin[i] = (int)i;
            for (size_t i = 0; i < out.face_origin.size(); ++i) out.face_origin[i] = (int)i;
            out.stats.reached_target = true;
            return out;
        }

        auto t0 = Clock::now();
        init_state();
        times_.quadric_construction = seconds_since(t0);

        t0 = Clock::now();
        populate_queue();
        times_.queue_population = seconds_since(t0);

        t0 = Clock::now();
        in_loop_ = true;
        collapse_loop();
        in_loop_ = false;
        times_.collapse_loop = seconds_since(t0);

        compact(out);
        out.history = std::move(history_);
        out.stats = stats_;
        out.phases = times_;
        return out;
    }

private:
    void init_state() {
        const int nv = mesh_.vertex_count();
        const int nf = mesh_.face_count();
        vertex_alive_.assign(nv, 1);
        face_alive_.assign(nf, 1);
        alive_faces_ = nf;
        generation_.assign(nv, 0);
        virtual_partners_.assign(nv, {});

        diag_ = mesh_.bbox_diagonal();
        degenerate_len_ = config_.degenerate_edge_fraction * diag_;
        face_area_tol_ = degenerate_len_ * degenerate_len_;

        adj_ = build_adjacency(mesh_);
        EdgeClassification classes = classify_edges(mesh_);

        seam_.assign(nv, 0);
        if (config_.weights.w_uv > 0.0) {
            for (int v : detect_uv_seams(mesh_)) seam_[v] = 1;
        }

        gf_.resize(nv);
        for (int v = 0; v < nv; ++v) {
            gf_[v] = gf_quadric(mesh_, adj_, classes, v, config_.weights, degenerate_len_,
                                face_area_tol_);
        }
    }

    void populate_queue() {
        // Deterministic edge order: collect keys from faces, then sort.
        std::vector<uint64_t> keys;
        keys.reserve(mesh_.faces.size() * 3);
        for (int f = 0; f < mesh_.face_count(); ++f) {
            const Tri& t = mesh_.faces[f];
            keys.push_back(edge_key(t[0], t[1]));
            keys.push_back(edge_key(t[1], t[2]));
            keys.push_back(edge_key(t[0], t[2]));
        }
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

        if (config_.enable_virtual_edges) {
            for (const VirtualEdge& e : insert_virtual_edges(mesh_, adj_,
                                                             config_.virtual_edge_fraction,
                                                             config_.degenerate_edge_fraction)) {
                sorted_insert(virtual_partners_[e.a], e.b);
                sorted_insert(virtual_partners_[e.b], e.a);
                keys.push_back(edge_key(e.a, e.b));
                ++stats_.virtual_edges_inserted;
            }
        }

        for (uint64_t key : keys) {
            auto [a, b] = edge_key_unpack(key);
            push_candidate(a, b);
            ++stats_.initial_candidates;
        }
    }

    void collapse_loop() {
        while (alive_faces_ > config_.target_faces && !queue_.empty()) {
            auto t_pop = Clock::now();
            Candidate c = queue_.top();
            queue_.pop();

            bool stale = generation_[c.a] != c.stamp_a || generation_[c.b] != c.stamp_b;
            times_.loop_pop += seconds_since(t_pop);
            if (stale) {
                ++stats_.stale_skipped;
                continue;
            }
            if (std::isinf(c.cost)) {
                ++stats_.infinite_skipped;
                continue;
            }
            if (flips_live(c.a, c.b, c.target)) {
                ++stats_.flip_vetoes;
                continue;
            }

            auto t_upd = Clock::now();
            collapse(c.a, c.b, c.target);
            update_neighbor_costs(c.a);
            times_.loop_neighbor_updates += seconds_since(t_upd);
        }
        stats_.reached_target = alive_faces_ <= config_.target_faces;
        stats_.queue_exhausted = !stats_.reached_target;
    }

    int live_edge_face_count(int a, int b) const {
        const std::vector<int>& fa = adj_.v_to_t[a];
        const std::vector<int>& fb = adj_.v_to_t[b];
        const std::vector<int>& scan = fa.size() <= fb.size() ? fa : fb;
        int other = fa.size() <= fb.size() ? b : a;
        int count = 0;
        for (int f : scan) {
            if (mesh_.faces[f].contains(other)) ++count;
        }
        return count;
    }

    Quadric live_area_quadric(int i, int j) {
        Quadric q;
        const int endpoints[2] = {i, j};
        uint64_t self = edge_key(i, j);
        bool self_added = false;
        for (int r : endpoints) {
            for (int s : adj_.v_to_v[r]) {
                if (live_edge_face_count(r, s) != 1) continue;
                uint64_t key = edge_key(r, s);
                if (key == self) {
                    if (self_added) continue;
                    self_added = true;
                }
                q += area_edge_quadric(mesh_.positions[r], mesh_.positions[s]);
            }
        }
        return q;
    }

    void push_candidate(int a, int b) {
        if (a > b) std::swap(a, b);

        Quadric area;
        if (config_.weights.w_area > 0.0) {
            auto t_area = Clock::now();
            area = live_area_quadric(a, b);
            if (in_loop_) times_.loop_area += seconds_since(t_area);
        }
        auto t_solve = Clock::now();
        EdgeCostResult cost = edge_cost_from_quadrics(
            gf_[a], gf_[b], mesh_.positions[a], mesh_.positions[b], area, seam_[a] != 0,
            seam_[b] != 0, config_.weights, degenerate_len_);
        if (in_loop_) times_.loop_solve += seconds_since(t_solve);

        queue_.push(Candidate{cost.total, a, b, cost.position, generation_[a], generation_[b]});
    }

    bool flips_live(int i, int j, const Vec3& target) const {
        const int endpoints[2] = {i, j};
        for (int u : endpoints) {
            for (int f : adj_.v_to_t[u]) {
                const Tri& t = mesh_.faces[f];
                if (t.contains(i) && t.contains(j)) continue;  // deleted by the collapse
                Vec3 before[3], after[3];
                for (int k = 0; k < 3; ++k) {
                    before[k] = mesh_.positions[t[k]];
                    after[k] = (t[k] == u) ? target : before[k];
                }
                Vec3 n0 = triangle_normal_raw(before[0], before[1], before[2]);
                Vec3 n1 = triangle_normal_raw(after[0], after[1], after[2]);
                if (dot(n0, n1) < 0.0) return true;
                if (0.5 * norm(n1) <= face_area_tol_) return true;
            }
        }
        return false;
    }

    void collapse(int kept, int removed, const Vec3& target) {
        CollapseRecord rec;
        rec.kept = kept;
        rec.removed = removed;
        rec.kept_old_position = mesh_.positions[kept];
        rec.removed_old_position = mesh_.positions[removed];
        rec.new_position = target;

        // Ring before surgery; used for adjacency rebuild and cost updates.
        std::vector<int> ring = adj_.v_to_v[kept];
        for (int n : adj_.v_to_v[removed]) sorted_insert(ring, n);
        sorted_erase(ring, kept);
        sorted_erase(ring, removed);

        mesh_.positions[kept] = target;
        gf_[kept] += gf_[removed];
        ++generation_[kept];
        ++generation_[removed];
        vertex_alive_[removed] = 0;

        const std::vector<int> faces_of_removed = adj_.v_to_t[removed];
        for (int f : faces_of_removed) {
            Tri& t = mesh_.faces[f];
            if (t.contains(kept)) {
                kill_face(f);
                rec.removed_faces.push_back(f);
            } else {
                for (int k = 0; k < 3; ++k) {
                    if (t[k] == removed) t[k] = kept;
                }
                sorted_insert(adj_.v_to_t[kept], f);
                rec.rewired_faces.push_back(f);
            }
        }
        adj_.v_to_t[removed].clear();

        // Rewiring can produce byte-identical duplicate faces around the
        // kept vertex on non-manifold input; keep the lowest-index copy.
        const std::vector<int>& kept_faces = adj_.v_to_t[kept];
        for (size_t x = 0; x < kept_faces.size(); ++x) {
            for (size_t y = x + 1; y < kept_faces.size(); ++y) {
                if (same_corners(mesh_.faces[kept_faces[x]], mesh_.faces[kept_faces[y]])) {
                    int dup = kept_faces[y];
                    kill_face(dup);
                    rec.removed_faces.push_back(dup);
                    ++stats_.duplicate_faces_removed;
                    --y;  // kept_faces shrank in place
                }
            }
        }

        // Local adjacency rebuild from surviving faces.
        adj_.v_to_v[removed].clear();
        rebuild_neighbors(kept);
        for (int n : ring) rebuild_neighbors(n);

        // Virtual partners of the removed vertex transfer to the kept one
        // unless the pair became a real edge.
        for (int p : std::vector<int>(virtual_partners_[removed])) {
            sorted_erase(virtual_partners_[p], removed);
            if (p != kept && vertex_alive_[p] && !sorted_contains(adj_.v_to_v[kept], p)) {
                sorted_insert(virtual_partners_[kept], p);
                sorted_insert(virtual_partners_[p], kept);
            }
        }
        virtual_partners_[removed].clear();
        for (int p : std::vector<int>(virtual_partners_[kept])) {
            if (!vertex_alive_[p] || sorted_contains(adj_.v_to_v[kept], p)) {
                sorted_erase(virtual_partners_[kept], p);
                sorted_erase(virtual_partners_[p], kept);
            }
        }

        seam_[kept] = seam_[kept] | seam_[removed];
        std::sort(rec.removed_faces.begin(), rec.removed_faces.end());
        history_.push_back(std::move(rec));
        ++stats_.collapses;
    }

    static bool same_corners(const Tri& a, const Tri& b) {
        std::array<int, 3> x = a.v, y = b.v;
        std::sort(x.begin(), x.end());
        std::sort(y.begin(), y.end());
        return x == y;
    }

    void kill_face(int f) {
        face_alive_[f] = 0;
        --alive_faces_;
        for (int k = 0; k < 3; ++k) sorted_erase(adj_.v_to_t[mesh_.faces[f][k]], f);
    }

    void rebuild_neighbors(int v) {
        std::vector<int> fresh;
        for (int f : adj_.v_to_t[v]) {
            const Tri& t = mesh_.faces[f];
            for (int k = 0; k < 3; ++k) {
                if (t[k] != v) sorted_insert(fresh, t[k]);
            }
        }
        adj_.v_to_v[v] = std::move(fresh);
    }

    void update_neighbor_costs(int kept) {
        std::vector<uint64_t> pairs;
        const std::vector<int>& ring = adj_.v_to_v[kept];
        for (int n : ring) pairs.push_back(edge_key(kept, n));
        for (int p : virtual_partners_[kept]) pairs.push_back(edge_key(kept, p));
        // Edges between ring vertices: their boundary-area context changed.
        for (int n : ring) {
            for (int m : adj_.v_to_v[n]) {
                if (m > n && sorted_contains(ring, m)) pairs.push_back(edge_key(n, m));
            }
            for (int p : virtual_partners_[n]) {
                if (p > n && sorted_contains(ring, p)) pairs.push_back(edge_key(n, p));
            }
        }
        std::sort(pairs.begin(), pairs.end());
        pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
        for (uint64_t key : pairs) {
            auto [a, b] = edge_key_unpack(key);
            push_candidate(a, b);
            ++stats_.pushed_candidates;
        }
    }

    void compact(SimplifyResult& out) {
        std::vector<int> vertex_map(mesh_.positions.size(), -1);
        for (size_t v = 0; v < mesh_.positions.size(); ++v) {
            if (!vertex_alive_[v]) continue;
            vertex_map[v] = static_cast<int>(out.mesh.positions.size());
            out.mesh.positions.push_back(mesh_.positions[v]);
            out.vertex_origin.push_back(static_cast<int>(v));
        }
        for (size_t f = 0; f < mesh_.faces.size(); ++f) {
            if (!face_alive_[f]) continue;
            Tri t = mesh_.faces[f];
            for (int k = 0; k < 3; ++k) t[k] = vertex_map[t[k]];
            out.mesh.faces.push_back(t);
            out.face_origin.push_back(static_cast<int>(f));
        }
    }

    Mesh mesh_;
    SimplifyConfig config_;
    Adjacency adj_;
    std::vector<char> vertex_alive_, face_alive_, seam_;
    std::vector<uint32_t> generation_;
    std::vector<std::vector<int>> virtual_partners_;
    std::vector<Quadric> gf_;
    std::priority_queue<Candidate, std::vector<Candidate>, CandidateAfter> queue_;
    CollapseHistory history_;
    SimplifyStats stats_;
    PhaseTimes times_;
    int alive_faces_ = 0;
    double diag_ = 0.0, degenerate_len_ = 0.0, face_area_tol_ = 0.0;
    bool in_loop_ = false;
};

}  // namespace

SimplifyResult simplify(const Mesh& mesh, const SimplifyConfig& config) {
    CollapseEngine engine(mesh, config);
    return engine.run();
}

bool causes_flip(const Mesh& mesh, const Adjacency& adj, int i, int j, const Vec3& target,
                 double face_area_tol) {
    const int endpoints[2] = {i, j};
    for (int u : endpoints) {
        for (int f : adj.v_to_t[u]) {
            const Tri& t = mesh.faces[f];
            if (t.contains(i) && t.contains(j)) continue;
            Vec3 before[3], after[3];
            for (int k = 0; k < 3; ++k) {
                before[k] = mesh.positions[t[k]];
                after[k] = (t[k] == u) ? target : before[k];
            }
            Vec3 n0 = triangle_normal_raw(before[0], before[1], before[2]);
            Vec3 n1 = triangle_normal_raw(after[0], after[1], after[2]);
            if (dot(n0, n1) < 0.0) return true;
            if (0.5 * norm(n1) <= face_area_tol) return true;
        }
    }
    return false;
}

Mesh replay_history(const Mesh& original, const CollapseHistory& history,
                    std::vector<int>* vertex_origin, std::vector<int>* face_origin) {
    if (history.empty()) {
        if (vertex_origin) {
            vertex_origin->resize(original.positions.size());
            for (size_t i = 0; i < vertex_origin->size(); ++i) (*vertex_origin)[i] = (int)i;
        }
        if (face_origin) {
            face_origin->resize(original.faces.size());
            for (size_t i = 0; i < face_origin->size(); ++i) (*face_origin)[i] = (int)i;
        }
        return original;
    }

    std::vector<Vec3> positions = original.positions;
    std::vector<Tri> faces = original.faces;
    std::vector<char> vertex_alive(positions.size(), 1);
    std::vector<char> face_alive(faces.size(), 1);

    for (const CollapseRecord& rec : history) {
        positions[rec.kept] = rec.new_position;
        vertex_alive[rec.removed] = 0;
        for (int f : rec.removed_faces) face_alive[f] = 0;
        for (int f : rec.rewired_faces) {
            for (int k = 0; k < 3; ++k) {
                if (faces[f][k] == rec.removed) faces[f][k] = rec.kept;
            }
        }
    }

    Mesh out;
    std::vector<int> vertex_map(positions.size(), -1);
    for (size_t v = 0; v < positions.size(); ++v) {
        if (!vertex_alive[v]) continue;
        vertex_map[v] = static_cast<int>(out.positions.size());
        out.positions.push_back(positions[v]);
        if (vertex_origin) vertex_origin->push_back(static_cast<int>(v));
    }
    for (size_t f = 0; f < faces.size(); ++f) {
        if (!face_alive[f]) continue;
        Tri t = faces[f];
        for (int k = 0; k < 3; ++k) t[k] = vertex_map[t[k]];
        out.faces.push_back(t);
        if (face_origin) face_origin->push_back(static_cast<int>(f));
    }
    return out;
}

}  // namespace faqem
