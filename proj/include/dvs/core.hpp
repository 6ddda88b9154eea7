#ifndef DVS_CORE_HPP
#define DVS_CORE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dvs {

// Cycle counts are integral; time and frequencies (cycles per time unit) are doubles.
using Cycles = std::int64_t;

/// Discrete frequency menu f_1 < ... < f_M, all positive.
class FrequencyMenu {
  public:
    explicit FrequencyMenu(std::vector<double> freqs);

    std::size_t size() const { return freqs_.size(); }
    double at(std::size_t k) const { return freqs_[k]; } // 0-based
    double slowest() const { return freqs_.front(); }
    double fastest() const { return freqs_.back(); }
    const std::vector<double>& values() const { return freqs_; }

    /// First menu frequency >= x, or f_M when x is above the whole menu.
    /// Total on finite inputs; x <= 0 yields f_1.
    double ceil(double x) const;

    /// 0-based position of an exact menu member. Throws for non-members.
    std::size_t index_of(double f) const;
    bool is_member(double f) const;

    /// Next menu member strictly above f, saturating at f_M.
    double next_above(double f) const;

    /// True when a menu member lies strictly inside (lo, hi).
    bool has_between(double lo, double hi) const;

  private:
    std::vector<double> freqs_;
};

struct TaskSpec {
    int index = 0;                          // 1-based position in the frame, T_1..T_N
    Cycles wcec = 0;                        // assumed worst case execution cycles w_i
    std::optional<Cycles> global_wcec;      // hard global bound W_i >= w_i, if known
    std::optional<double> overrun_factor;   // alpha: demand assumed <= w_i * (1 + alpha)
    std::optional<Cycles> kappa;            // percentile threshold kappa_i(eps), 0 < kappa <= w_i
};

/// Frame-based task set: tasks run in index order, all sharing deadline/period D.
class TaskSet {
  public:
    TaskSet(std::vector<TaskSpec> tasks, double deadline);

    int size() const { return static_cast<int>(tasks_.size()); }
    double deadline() const { return deadline_; }
    const TaskSpec& task(int i) const { return tasks_[static_cast<std::size_t>(i - 1)]; } // 1-based
    TaskSpec& task(int i) { return tasks_[static_cast<std::size_t>(i - 1)]; }
    const std::vector<TaskSpec>& tasks() const { return tasks_; }

    Cycles total_wcec() const;

    /// Baseline schedulability, sum(w_i)/f_M <= D. Overloaded sets are legal inputs
    /// for sweeps, so a violation is reported as a message rather than thrown.
    std::optional<std::string> feasibility_warning(const FrequencyMenu& menu) const;

  private:
    std::vector<TaskSpec> tasks_;
    double deadline_;
};

struct SchedulePoint {
    double t = 0;
    double f = 0;
};

/// Piecewise-constant scheduling function S_i(t): the frequency a task uses if it
/// starts at time t. Steps are left-closed/right-open; the last step extends to
/// infinity. Stored as ordered breakpoints, first one at t = 0.
class ScheduleFunction {
  public:
    /// Points must already be in normal form (use normalize_schedule otherwise).
    explicit ScheduleFunction(std::vector<SchedulePoint> points);

    const std::vector<SchedulePoint>& points() const { return points_; }
    std::size_t steps() const { return points_.size(); }

    /// S(t) for t >= 0, by binary search over breakpoints.
    double value_at(double t) const;

    /// All frequencies are menu members and the step count stays within the menu size.
    void validate_against(const FrequencyMenu& menu) const;

  private:
    std::vector<SchedulePoint> points_;
};

/// Collapse duplicate times (last-inserted point wins) and merge equal adjacent
/// frequencies. Input must be sorted by time and start at t = 0.
ScheduleFunction normalize_schedule(std::vector<SchedulePoint> points);

} // namespace dvs

#endif
