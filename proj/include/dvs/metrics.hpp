#ifndef DVS_METRICS_HPP
#define DVS_METRICS_HPP

#include <optional>
#include <vector>

#include "dvs/adaptation.hpp"
#include "dvs/core.hpp"

namespace dvs {

/// Per-cycle energy grows with the square of the frequency; idle time is free.
/// Unit-less by design: only comparisons between runs of one workload mean
/// anything.
inline double energy_of(double cycles, double f) {
    return cycles * f * f;
}

struct ExecSegment {
    double start = 0; // time the piece began
    double cycles = 0;
    double f = 0;
};

struct TaskFrameRecord {
    Cycles requested = 0;  // r_k
    double executed = 0;   // e_k <= r_k, fractional when cut mid-cycle
    bool finished = false;
    bool killed = false;
    bool suspended = false; // was parked in the resume queue at least once
    bool dropped = false;   // never got the CPU
    std::vector<ExecSegment> segments; // execution pieces, in order; energy derives from these
};

struct FrameResult {
    std::vector<TaskFrameRecord> tasks;
    double energy = 0;
    bool deadline_miss = false; // kills substitute for misses; must stay false
    std::vector<OverrunEvent> overruns; // observed WCEC increases, ascending task index
};

enum class FairnessVariant { AllInstances, KilledOnly };

/// Aggregates over frames and repetitions. Laxity L_i is the mean of e_k/r_k per
/// task, over all instances or over killed/dropped ones only.
struct MetricsSeries {
    long long jobs_total = 0;
    long long jobs_finished = 0;
    long long jobs_killed = 0;
    long long jobs_dropped = 0;

    double total_energy = 0;                // mean per repetition
    std::vector<double> frame_energy;       // per frame index, mean over repetitions
    std::vector<double> frame_kills;        // killed+dropped per frame index, mean over reps

    std::vector<double> laxity_all;                       // per task
    std::vector<std::optional<double>> laxity_killed;     // per task; empty domain -> nullopt

    double kill_rate() const;
    std::optional<double> fairness_all() const;
    std::optional<double> fairness_killed() const;
};

/// min_i L_i / max_i L_i over the tasks where L_i is defined, or nullopt when no
/// task has a defined laxity under the variant.
std::optional<double> fairness(const MetricsSeries& m, FairnessVariant variant);

/// Pools frame results across repetitions into a MetricsSeries.
class MetricsAccumulator {
  public:
    MetricsAccumulator(int n_tasks, int n_frames);
    void add_frame(int frame_index, const FrameResult& frame);
    void end_repetition();
    MetricsSeries finish() const;

  private:
    int n_tasks_;
    int n_frames_;
    int repetitions_ = 0;
    double rep_energy_ = 0;
    double total_energy_ = 0;
    std::vector<double> frame_energy_;
    std::vector<double> frame_kills_;
    std::vector<double> ratio_sum_all_, ratio_sum_killed_;
    std::vector<long long> count_all_, count_killed_;
    long long finished_ = 0, killed_ = 0, dropped_ = 0, total_ = 0;
};

} // namespace dvs

#endif
