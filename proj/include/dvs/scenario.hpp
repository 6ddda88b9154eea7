#ifndef DVS_SCENARIO_HPP
#define DVS_SCENARIO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dvs/adaptation.hpp"
#include "dvs/core.hpp"
#include "dvs/frame_engine.hpp"
#include "dvs/kill_policy.hpp"
#include "dvs/metrics.hpp"
#include "dvs/resume.hpp"
#include "dvs/workload.hpp"

namespace dvs {

struct SimConfig {
    TaskSet task_set;
    FrequencyMenu menu;
    KillPolicy kill_policy;
    std::optional<ResumePolicy> resume;
    AdaptationMethod adaptation = AdaptationMethod::None;
    int repetitions = 300; // "run several hundreds of times"
    std::uint64_t seed = 0;
    int calibration_samples = 4096; // draws used to estimate kappa for percentile policies

    SimConfig(TaskSet ts, FrequencyMenu m, KillPolicy kp)
        : task_set(std::move(ts)), menu(std::move(m)), kill_policy(std::move(kp)) {}

    SimConfig with_deadline(double d) const;
};

/// Run the scenario: repetitions of frame-by-frame simulation with between-frame
/// adaptation per the configured method. Synthetic workloads redraw demands per
/// repetition; traces replay the same matrix (only resume-order randomness varies).
MetricsSeries run_scenario(const SimConfig& config, const WorkloadModel& workload);

struct SweepRow {
    double deadline = 0;
    double energy = 0;
    double kill_rate = 0;
    std::optional<double> fairness_all;
    std::optional<double> fairness_killed;
    std::optional<std::string> warning; // overload notice, run anyway
};

/// One run_scenario per deadline with identical seeds; overloaded task sets are
/// run anyway (that is the high-load regime) with the invariant downgraded to a
/// warning in the row.
std::vector<SweepRow> sweep_frame_length(const SimConfig& config,
                                         const std::vector<double>& deadlines,
                                         const WorkloadModel& workload);

} // namespace dvs

#endif
