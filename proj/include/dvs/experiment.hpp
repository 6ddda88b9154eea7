#ifndef DVS_EXPERIMENT_HPP
#define DVS_EXPERIMENT_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dvs/scenario.hpp"
#include "dvs/workload.hpp"

namespace dvs {

/// Raised on malformed experiment files; the message names the offending field.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A parsed experiment file: one simulation setup plus workload, sweep list and
/// output destination. Field reference lives in the README; unknown keys are
/// rejected so typos cannot silently change an experiment.
struct Experiment {
    SimConfig config;
    WorkloadModel workload;
    std::vector<double> sweep_deadlines;
    std::string output_dir = "out";

    explicit Experiment(SimConfig c) : config(std::move(c)) {}
};

/// Parse and validate an experiment file (JSON). Trace paths are resolved
/// relative to the file's directory and loaded eagerly.
Experiment load_experiment(const std::string& path);

struct CliOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> output_dir;
    std::optional<int> repetitions;
};

void apply_overrides(Experiment& exp, const CliOverrides& ov);

/// deadline,energy,kill_rate,fairness_all,fairness_killed; undefined fairness
/// prints as nan.
void write_metrics_csv(const std::string& path, const std::vector<SweepRow>& rows);

/// frame,energy,kills per frame index (means over repetitions).
void write_frame_series_csv(const std::string& path, const MetricsSeries& metrics);

std::string format_summary(double deadline, const MetricsSeries& metrics);

} // namespace dvs

#endif
