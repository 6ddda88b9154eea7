#ifndef DVS_WORKLOAD_HPP
#define DVS_WORKLOAD_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dvs/core.hpp"

namespace dvs {

/// Per-task parameters of the two-phase synthetic workload: normally distributed
/// cycle demands whose mean (and worst case) may change at the phase boundary.
struct TaskPhaseParams {
    double mean1 = 0, stddev1 = 0;
    double mean2 = 0, stddev2 = 0;
    std::optional<Cycles> wcec1; // defaults to ceil(mean + 3*stddev)
    std::optional<Cycles> wcec2;
};

struct WorkloadModel {
    enum class Kind { TwoPhaseNormal, Trace };
    Kind kind = Kind::TwoPhaseNormal;

    // TwoPhaseNormal
    std::vector<TaskPhaseParams> tasks;
    int phase1_frames = 0;
    int phase2_frames = 0;

    // Trace
    std::vector<std::vector<Cycles>> trace; // [frame][task]
    std::optional<int> trace_phase2_start;  // first phase-2 frame, for clairvoyant runs
    std::vector<Cycles> trace_phase2_wcec;

    int frames() const;
    int n_tasks() const;

    /// Worst case of the given phase (1 or 2); what a clairvoyant scheduler knows.
    Cycles phase_wcec(int task_index, int phase) const;
    /// First frame index of phase 2, if the model has one.
    std::optional<int> phase2_start() const;

    void validate() const;
};

/// Per-frame, per-task integer demand matrix; deterministic under the seed.
/// Normal draws are redrawn until they land in [1, phase WCEC].
std::vector<std::vector<Cycles>> generate_workload(const WorkloadModel& model,
                                                   std::uint64_t seed);

/// One rounded normal draw, redrawn until it lands in [1, cap].
Cycles truncated_normal_draw(std::mt19937_64& rng, double mean, double stddev, Cycles cap);

/// Trace file format: CSV with header "task_1,...,task_N", one row per frame,
/// integer cycles per cell; '#' starts a comment line.
std::vector<std::vector<Cycles>> read_trace(const std::string& path);
void write_trace(const std::string& path, const std::vector<std::vector<Cycles>>& demands);

/// Stable seed derivation for independent streams (repetitions, calibration).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

} // namespace dvs

#endif
