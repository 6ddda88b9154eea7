#ifndef DVS_ADAPTATION_HPP
#define DVS_ADAPTATION_HPP

#include <string>
#include <vector>

#include "dvs/core.hpp"
#include "dvs/feasibility.hpp"
#include "dvs/kill_policy.hpp"

namespace dvs {

/// One task's observed WCEC change from the previous frame.
struct OverrunEvent {
    int task_index = 0;
    Cycles observed_cycles = 0; // c_j
    Cycles old_wcec = 0;        // w_j the schedules were built for
    bool killed = false;        // job was cut at c_j; the true maximum may be larger

    static OverrunEvent increase(int task_index, Cycles observed, Cycles old_wcec,
                                 bool killed = false);
    static OverrunEvent decrease(int task_index, Cycles observed, Cycles old_wcec);
    bool is_increase() const { return observed_cycles > old_wcec; }
};

/// Work counters for the complexity assertions.
struct AdaptationStats {
    long points_touched = 0; // breakpoint moves/raises/inserts
    long ceil_evals = 0;     // menu lookups (each O(log M))
};

enum class AdaptationMethod { None, SchedCondition, HorizontalShift, Clairvoyant };

/// Raise S_i pointwise to max{S_i(t), ceil_F(c_j/(z_{i+1}-t))} for i <= j, leaving
/// i > j untouched. Breakpoints are raised in place; where a step's predecessor
/// violates the bound, a breakpoint is inserted (or moved) at z_{i+1} - c_j/f_prev.
std::vector<ScheduleFunction> adapt_schedulability_condition(
    const std::vector<ScheduleFunction>& schedules, const OverrunEvent& ev,
    const DangerZones& zones, const FrequencyMenu& menu, AdaptationStats* stats = nullptr);

/// Shift every breakpoint of S_i (i < j) left by (c_j-w_j)/f_M, clamping at 0;
/// apply the schedulability-condition raise for i = j; leave i > j untouched.
std::vector<ScheduleFunction> adapt_horizontal_shift(
    const std::vector<ScheduleFunction>& schedules, const OverrunEvent& ev,
    const DangerZones& zones, const FrequencyMenu& menu, AdaptationStats* stats = nullptr);

/// Move the kill/suspend instants to track the shifted danger zones: hybrid kill
/// times lose (1-delta_i)*(c_j-w_j)/f_M for i <= j; percentile kill times move by
/// the kappa-transform delta (stretch inside the window, plain shift outside).
/// ztilde_{N+1} stays pinned at D.
KillTimes adapt_kill_times(const KillTimes& kt, const KillPolicy& policy, const OverrunEvent& ev,
                           const TaskSet& ts, const FrequencyMenu& menu);

struct OverrunAdaptation {
    std::vector<ScheduleFunction> schedules;
    KillTimes kill_times;
    TaskSet task_set; // WCECs (and kappas, for percentile) updated
    std::vector<std::string> notes;
};

/// Fold the single-event adaptation over one frame's overruns in ascending task
/// order, recomputing danger zones between events. Each event sets
/// w_j <- max{c_j, w_j}; killed jobs contribute their cut point as a provisional
/// WCEC (the system converges over later frames).
OverrunAdaptation apply_overruns(std::vector<ScheduleFunction> schedules, KillTimes kt,
                                 TaskSet ts, std::vector<OverrunEvent> events,
                                 const KillPolicy& policy, const FrequencyMenu& menu,
                                 AdaptationMethod method);

/// WCEC decrease (c_j < w_j): right-shift S_i for i < j, scale S_j by c_j/w_j
/// (snapped up to the menu), leave i > j untouched.
std::vector<ScheduleFunction> adapt_wcec_decrease(const std::vector<ScheduleFunction>& schedules,
                                                  const OverrunEvent& ev,
                                                  const DangerZones& zones,
                                                  const FrequencyMenu& menu);

} // namespace dvs

#endif
