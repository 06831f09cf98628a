#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "json.hpp"

#include "pfd/bounds.hpp"
#include "pfd/catalog.hpp"

namespace pfd {

inline constexpr const char* kGeneratorVersion = "pfdesign 0.1.0";
inline constexpr const char* kWorkersEnvVar = "PFDESIGN_WORKERS";

/// Sampling experiment configuration: Haar bipartite pure states, running
/// t-fold moment averages checked against the partial-trace bounds.
struct ExperimentConfig {
    int dA = 2;
    int dB = 2;
    int t = 2;
    int n_samples = 10'000;
    int n_runs = 100;
    std::vector<SchattenIndex> p_list{SchattenIndex(1), SchattenIndex(2), SchattenIndex(3),
                                      SchattenIndex::infinity()};
    std::uint64_t master_seed = 0;
    /// Strictly increasing sample counts; empty selects the default log grid.
    std::vector<int> checkpoints;
    /// 0 resolves to PFDESIGN_WORKERS or hardware concurrency.
    int workers = 0;

    void validate() const;
};

/// One CSV row: deltas at a checkpoint for one run and one norm order.
struct TrajectoryRecord {
    int run_id = 0;
    int samples = 0;
    SchattenIndex p = SchattenIndex(1);
    double delta_source = 0.0;
    double delta_pushed = 0.0;
    double bound_obs1 = 0.0;
    double bound_thm4 = 0.0;
};

struct PerPSummary {
    SchattenIndex p = SchattenIndex(1);
    long violations_obs1 = 0;
    long violations_thm4 = 0;
    double mean_final_delta_source = 0.0;
    double mean_final_delta_pushed = 0.0;
    /// Least-squares slope of log10(mean delta_source) vs log10 M for M >= 100.
    double slope_source = 0.0;
    /// max over runs of delta_pushed / bound_thm4 at the final checkpoint.
    double max_tightness_thm4 = 0.0;
};

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<int> checkpoints;
    std::vector<TrajectoryRecord> records; // run-major, then checkpoint, then p
    std::vector<PerPSummary> per_p;
    long total_violations() const;
};

/// Default checkpoint grid: 20 log-spaced points per decade from 1 to n.
std::vector<int> default_checkpoints(int n_samples);

/// Least-squares slope of y against x; NaN with fewer than two points.
double fit_loglog_slope(const std::vector<double>& log_x, const std::vector<double>& log_y);

ExperimentResult run_mc_experiment(const ExperimentConfig& cfg);

/// Fixed header run_id,M,p,delta_source,delta_pushed,bound_obs1,bound_thm4;
/// p = inf serialized as "inf"; floats as %.17g. Byte-stable for a fixed
/// config regardless of worker count.
void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryRecord>& records);

nlohmann::ordered_json experiment_summary_json(const ExperimentResult& result);

} // namespace pfd
