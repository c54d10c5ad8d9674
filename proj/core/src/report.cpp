#include "faqem/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace faqem {

double RunReport::phase_total() const {
    return phases.quadric_construction + phases.queue_population + phases.collapse_loop +
           phases.mapping_and_bake;
}

double RunReport::percent(double phase_seconds) const {
    double total = phase_total();
    return total > 0.0 ? 100.0 * phase_seconds / total : 0.0;
}

std::string report_to_json(const RunReport& r) {
    nlohmann::json j;
    j["input"] = r.input_path;
    j["input_faces"] = r.input_faces;
    j["output_faces"] = r.output_faces;
    j["runtime_seconds"] = r.runtime_seconds;

    nlohmann::json phases = nlohmann::json::array();
    auto phase = [&](const char* name, double seconds) {
        nlohmann::json p;
        p["name"] = name;
        p["seconds"] = seconds;
        p["percent"] = r.percent(seconds);
        return p;
    };
    phases.push_back(phase(phase_names::kQuadricConstruction, r.phases.quadric_construction));
    phases.push_back(phase(phase_names::kQueuePopulation, r.phases.queue_population));
    nlohmann::json loop = phase(phase_names::kCollapseLoop, r.phases.collapse_loop);
    loop["sub_phases"] = {
        phase(phase_names::kLoopPop, r.phases.loop_pop),
        phase(phase_names::kLoopSolve, r.phases.loop_solve),
        phase(phase_names::kLoopArea, r.phases.loop_area),
        phase(phase_names::kLoopNeighborUpdates, r.phases.loop_neighbor_updates),
    };
    phases.push_back(loop);
    phases.push_back(phase(phase_names::kMappingAndBake, r.phases.mapping_and_bake));
    j["phases"] = phases;

    j["stats"] = {{"collapses", r.stats.collapses},
                  {"flip_vetoes", r.stats.flip_vetoes},
                  {"stale_skipped", r.stats.stale_skipped},
                  {"infinite_skipped", r.stats.infinite_skipped},
                  {"duplicate_faces_removed", r.stats.duplicate_faces_removed},
                  {"virtual_edges_inserted", r.stats.virtual_edges_inserted},
                  {"reached_target", r.stats.reached_target},
                  {"queue_exhausted", r.stats.queue_exhausted}};

    j["config"] = {{"target_faces", r.config.target_faces},
                   {"w_area", r.config.weights.w_area},
                   {"w_boundary", r.config.weights.w_boundary},
                   {"w_uv", r.config.weights.w_uv},
                   {"w_normal", r.config.weights.w_normal},
                   {"w_plane_area", r.config.weights.w_plane_area},
                   {"virtual_edges", r.config.enable_virtual_edges},
                   {"weld_tolerance", r.config.weld_tolerance},
                   {"seed", r.config.rng_seed}};

    if (r.metrics) {
        j["metrics"] = {{"hausdorff_raw", r.metrics->hausdorff_raw},
                        {"hausdorff_norm", r.metrics->hausdorff_norm},
                        {"chamfer_raw", r.metrics->chamfer_raw},
                        {"chamfer_norm", r.metrics->chamfer_norm}};
        if (r.metrics->texture_chamfer) {
            j["metrics"]["texture_chamfer"] = *r.metrics->texture_chamfer;
        }
    }
    return j.dump(2);
}

void save_report_json(const RunReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << report_to_json(report) << "\n";
}

std::string metrics_csv_header() {
    return "mesh,faces_a,faces_b,hausdorff_raw,hausdorff_norm,chamfer_raw,chamfer_norm,"
           "texture_chamfer,runtime_seconds";
}

std::string metrics_csv_row(const std::string& mesh_id, int faces_a, int faces_b,
                            const MetricValues& m, double runtime_seconds) {
    char buf[512];
    std::string texture = m.texture_chamfer
                              ? [&] {
                                    char t[48];
                                    std::snprintf(t, sizeof(t), "%.9g", *m.texture_chamfer);
                                    return std::string(t);
                                }()
                              : std::string("NA");
    std::snprintf(buf, sizeof(buf), "%s,%d,%d,%.9g,%.9g,%.9g,%.9g,%s,%.3f", mesh_id.c_str(),
                  faces_a, faces_b, m.hausdorff_raw, m.hausdorff_norm, m.chamfer_raw,
                  m.chamfer_norm, texture.c_str(), runtime_seconds);
    return buf;
}

}  // namespace faqem
