// Structured run reports: per-phase wall times with normalized
// percentages, face counts, metric values, and a config echo, emitted as
// JSON or CSV rows.
#pragma once

#include <optional>
#include <string>

#include "faqem/simplify.hpp"

namespace faqem {

// Pipeline phase labels used in profile output.
namespace phase_names {
inline constexpr const char* kQuadricConstruction = "Initial Quadric Construction";
inline constexpr const char* kQueuePopulation = "Priority Queue Population";
inline constexpr const char* kCollapseLoop = "Iterative Collapse Loop";
inline constexpr const char* kLoopPop = "Edge Pop from Queue";
inline constexpr const char* kLoopSolve = "Optimal Position Solve";
inline constexpr const char* kLoopArea = "Area Cost Calculation";
inline constexpr const char* kLoopNeighborUpdates = "Neighbor Updates";
inline constexpr const char* kMappingAndBake = "Successive Mapping & Texture Bake";
}  // namespace phase_names

struct MetricValues {
    double hausdorff_raw = 0.0;
    double hausdorff_norm = 0.0;
    double chamfer_raw = 0.0;
    double chamfer_norm = 0.0;
    std::optional<double> texture_chamfer;
};

struct RunReport {
    std::string input_path;
    int input_faces = 0;
    int output_faces = 0;
    PhaseTimes phases;
    SimplifyStats stats;
    SimplifyConfig config;
    std::optional<MetricValues> metrics;
    double runtime_seconds = 0.0;

    // Top-level phase seconds in report order; the four percentages are
    // normalized to sum to 100.
    double phase_total() const;
    double percent(double phase_seconds) const;
};

std::string report_to_json(const RunReport& report);
void save_report_json(const RunReport& report, const std::string& path);

// One CSV row per run: mesh id, face counts, metric values, runtime.
std::string metrics_csv_header();
std::string metrics_csv_row(const std::string& mesh_id, int faces_a, int faces_b,
                            const MetricValues& m, double runtime_seconds);

}  // namespace faqem
