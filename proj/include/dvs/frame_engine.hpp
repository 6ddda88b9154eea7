#ifndef DVS_FRAME_ENGINE_HPP
#define DVS_FRAME_ENGINE_HPP

#include <optional>
#include <random>
#include <vector>

#include "dvs/core.hpp"
#include "dvs/feasibility.hpp"
#include "dvs/kill_policy.hpp"
#include "dvs/metrics.hpp"
#include "dvs/resume.hpp"

namespace dvs {

/// Everything run_frame needs about the current scheduler state. The scenario
/// runner owns and updates these between frames.
struct FrameSetup {
    const TaskSet* ts = nullptr;
    const FrequencyMenu* menu = nullptr;
    const std::vector<ScheduleFunction>* schedules = nullptr;
    const DangerZones* zones = nullptr;
    const KillTimes* kill_times = nullptr;
    std::optional<ResumePolicy> resume; // unset = kill-only system
};

/// Execute one frame. Tasks run in index order; a task starting at t uses
/// S_i(t), or f_M when t is already inside its danger zone. A task still
/// running at ztilde_{i+1} is killed (no preemption) or suspended. A task that
/// cannot start before min(ztilde_{i+1}, D) is dropped. Suspended jobs are
/// resumed per the resume policy, in mid-frame slack windows and/or after T_N;
/// whatever is still unfinished at D counts as killed.
///
/// While a task executes inside its own danger zone it is sped up to f_M, but
/// only under policies that let it outlive the strict zone boundary
/// (ztilde_{i+1} > z_{i+1}); with kill-at-danger-zone semantics the schedule
/// frequency stands until the kill.
FrameResult run_frame(const FrameSetup& setup, const std::vector<Cycles>& demands,
                      std::mt19937_64& rng);

} // namespace dvs

#endif
