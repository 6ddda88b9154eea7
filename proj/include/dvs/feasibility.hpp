#ifndef DVS_FEASIBILITY_HPP
#define DVS_FEASIBILITY_HPP

#include <optional>
#include <string>
#include <vector>

#include "dvs/core.hpp"

namespace dvs {

/// Danger-zone starts: z_i = D - (1/f_M) * sum_{k=i..N} w_k, and z_{N+1} = D.
/// Starting T_i after z_i means the remaining worst-case work cannot be
/// guaranteed to finish by D even at f_M.
class DangerZones {
  public:
    DangerZones(std::vector<double> z, double deadline);

    int tasks() const { return static_cast<int>(z_.size()) - 1; }
    double deadline() const { return z_.back(); }
    /// 1-based, i in [1, N+1]; z(N+1) == D.
    double z(int i) const { return z_[static_cast<std::size_t>(i - 1)]; }

  private:
    std::vector<double> z_;
};

DangerZones danger_zones(const TaskSet& ts, const FrequencyMenu& menu);

struct FeasibilityViolation {
    int task = 0;
    double time = 0;      // earliest start time at which the condition fails
    double required = 0;  // w_i / (z_{i+1} - t) at the step's sup point
    double available = 0; // step frequency
};

struct FeasibilityCheck {
    bool feasible = true;
    std::optional<FeasibilityViolation> violation; // first one, in task order
    std::string message() const;
};

/// Necessary-and-sufficient schedulability check: for every i and every
/// t in [0, z_i), S_i(t) >= w_i / (z_{i+1} - t). Evaluated in closed form
/// per step, using the closed right-end value as the supremum of the bound
/// (conservative by a measure-zero point since steps are right-open).
FeasibilityCheck check_schedulability(const std::vector<ScheduleFunction>& schedules,
                                      const TaskSet& ts, const FrequencyMenu& menu);

/// Feasibility-tight builder: S_i(t) = ceil_F(w_i / (z_{i+1} - t)) before the
/// danger zone and f_M from z_i on. Breakpoints sit at z_{i+1} - w_i/f_k, the
/// instants where menu frequency f_k stops being sufficient. Output always
/// passes check_schedulability.
std::vector<ScheduleFunction> build_baseline_schedules(const TaskSet& ts,
                                                       const FrequencyMenu& menu);

} // namespace dvs

#endif
