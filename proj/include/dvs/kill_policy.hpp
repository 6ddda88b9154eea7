#ifndef DVS_KILL_POLICY_HPP
#define DVS_KILL_POLICY_HPP

#include <optional>
#include <vector>

#include "dvs/core.hpp"
#include "dvs/feasibility.hpp"

namespace dvs {

/// Which rule sets the kill/suspend instants ztilde_i. A still-running T_i is
/// killed (no preemption) or suspended (with preemption) at ztilde_{i+1}.
struct KillPolicy {
    enum class Kind { AtDangerZone, AtDeadline, Hybrid, Percentile };
    enum class KappaTransform { Stretch, Shift };

    Kind kind = Kind::AtDangerZone;
    // Hybrid: per-task delta in [0,1] (size 1 broadcasts). delta=0 is kill at
    // danger zone, delta=1 is kill at D.
    std::vector<double> delta;
    // Percentile: per-task epsilon in [0,1] (size 1 broadcasts); kappa_i is the
    // 1-eps percentile of the task's cycle demand.
    std::vector<double> epsilon;
    std::optional<int> window; // K: how many successors are budgeted at kappa; unset = all
    KappaTransform kappa_transform = KappaTransform::Stretch; // kappa update on overrun

    static KillPolicy at_danger_zone();
    static KillPolicy at_deadline();
    static KillPolicy hybrid(double delta);
    static KillPolicy hybrid(std::vector<double> delta);
    static KillPolicy percentile(double epsilon, std::optional<int> window = std::nullopt);
    static KillPolicy percentile(std::vector<double> epsilon,
                                 std::optional<int> window = std::nullopt);

    double delta_for(int i) const;   // 1-based task index
    double epsilon_for(int i) const;
    void validate(int n_tasks) const;
};

/// Kill/suspend instants, 1-based like the zones; ztilde(N+1) = D always.
class KillTimes {
  public:
    KillTimes(std::vector<double> ztilde);
    int tasks() const { return static_cast<int>(v_.size()) - 1; }
    double ztilde(int i) const { return v_[static_cast<std::size_t>(i - 1)]; }
    double& ztilde(int i) { return v_[static_cast<std::size_t>(i - 1)]; }
    double deadline() const { return v_.back(); }

  private:
    std::vector<double> v_;
};

/// Compute ztilde for the policy. Percentile requires kappa on every task.
KillTimes kill_times(const KillPolicy& policy, const TaskSet& ts, const DangerZones& zones,
                     const FrequencyMenu& menu);

/// Empirical kappa(eps): smallest candidate K with P[c < K] >= 1 - eps, candidates
/// being the observed values plus the WCEC; clamped to [1, wcec]. eps = 1 yields
/// the floor 1, eps = 0 the WCEC.
Cycles percentile_kappa(std::vector<Cycles> samples, double epsilon, Cycles wcec);

} // namespace dvs

#endif
