#include "dvs/adaptation.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace dvs {

namespace {

double menu_ceil(const FrequencyMenu& menu, double x, AdaptationStats* stats) {
    if (stats)
        ++stats->ceil_evals;
    return menu.ceil(x);
}

/// Enforce S(t) >= ceil_F(c / (z_next - t)) on one function. The raised bound
/// is itself a staircase whose steps begin at the tightness points
/// z_next - c/f_k; the result is the pointwise max of the two step functions.
/// Tightness points falling before 0 clamp to 0, where the fastest colliding
/// step survives.
ScheduleFunction raise_to_condition(const ScheduleFunction& s, double z_next, Cycles c,
                                    const FrequencyMenu& menu, AdaptationStats* stats) {
    const double cd = static_cast<double>(c);
    std::vector<SchedulePoint> stair;
    double f0 = z_next > 0.0 ? menu_ceil(menu, cd / z_next, stats) : menu.fastest();
    stair.push_back({0.0, f0});
    for (std::size_t k = menu.index_of(f0); k + 1 < menu.size(); ++k) {
        // f_k stops covering the bound at its tightness point; step up there
        double t = z_next - cd / menu.at(k);
        stair.push_back({std::max(0.0, t), menu.at(k + 1)});
        if (stats)
            ++stats->points_touched;
    }
    ScheduleFunction bound = normalize_schedule(std::move(stair));

    std::vector<double> times;
    times.reserve(s.points().size() + bound.points().size());
    for (const SchedulePoint& p : s.points())
        times.push_back(p.t);
    for (const SchedulePoint& p : bound.points())
        times.push_back(p.t);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());

    std::vector<SchedulePoint> merged;
    merged.reserve(times.size());
    for (double t : times) {
        merged.push_back({t, std::max(s.value_at(t), bound.value_at(t))});
        if (stats)
            ++stats->points_touched;
    }
    return normalize_schedule(std::move(merged));
}

void require_increase(const OverrunEvent& ev) {
    if (ev.observed_cycles < ev.old_wcec)
        throw std::invalid_argument("not an increase: c_j < w_j");
}

} // namespace

OverrunEvent OverrunEvent::increase(int task_index, Cycles observed, Cycles old_wcec,
                                    bool killed) {
    if (observed < old_wcec)
        throw std::invalid_argument("increase event needs c_j >= w_j");
    return OverrunEvent{task_index, observed, old_wcec, killed};
}

OverrunEvent OverrunEvent::decrease(int task_index, Cycles observed, Cycles old_wcec) {
    if (observed >= old_wcec)
        throw std::invalid_argument("decrease event needs c_j < w_j");
    if (observed < 1)
        throw std::invalid_argument("observed cycles must be at least 1");
    return OverrunEvent{task_index, observed, old_wcec, false};
}

std::vector<ScheduleFunction> adapt_schedulability_condition(
    const std::vector<ScheduleFunction>& schedules, const OverrunEvent& ev,
    const DangerZones& zones, const FrequencyMenu& menu, AdaptationStats* stats) {
    require_increase(ev);
    std::vector<ScheduleFunction> out;
    out.reserve(schedules.size());
    for (int i = 1; i <= static_cast<int>(schedules.size()); ++i) {
        const ScheduleFunction& s = schedules[static_cast<std::size_t>(i - 1)];
        if (i > ev.task_index) {
            out.push_back(s); // lower bound of S_i does not depend on earlier tasks
            continue;
        }
        out.push_back(raise_to_condition(s, zones.z(i + 1), ev.observed_cycles, menu, stats));
    }
    return out;
}

std::vector<ScheduleFunction> adapt_horizontal_shift(
    const std::vector<ScheduleFunction>& schedules, const OverrunEvent& ev,
    const DangerZones& zones, const FrequencyMenu& menu, AdaptationStats* stats) {
    require_increase(ev);
    const double shift =
        static_cast<double>(ev.observed_cycles - ev.old_wcec) / menu.fastest();
    std::vector<ScheduleFunction> out;
    out.reserve(schedules.size());
    for (int i = 1; i <= static_cast<int>(schedules.size()); ++i) {
        const ScheduleFunction& s = schedules[static_cast<std::size_t>(i - 1)];
        if (i > ev.task_index) {
            out.push_back(s);
        } else if (i == ev.task_index) {
            out.push_back(raise_to_condition(s, zones.z(i + 1), ev.observed_cycles, menu, stats));
        } else {
            std::vector<SchedulePoint> pts = s.points();
            for (SchedulePoint& p : pts) {
                p.t = std::max(0.0, p.t - shift);
                if (stats)
                    ++stats->points_touched;
            }
            // colliding points at 0 resolve to the last (fastest) one
            out.push_back(normalize_schedule(std::move(pts)));
        }
    }
    return out;
}

KillTimes adapt_kill_times(const KillTimes& kt, const KillPolicy& policy, const OverrunEvent& ev,
                           const TaskSet& ts, const FrequencyMenu& menu) {
    require_increase(ev);
    const int n = kt.tasks();
    const int j = ev.task_index;
    const double fm = menu.fastest();
    const double dz = static_cast<double>(ev.observed_cycles - ev.old_wcec) / fm;
    KillTimes out = kt;

    if (policy.kind == KillPolicy::Kind::Percentile) {
        if (policy.kappa_transform == KillPolicy::KappaTransform::Shift) {
            // kappa'_j = kappa_j + (c_j - w_j): every affected kill time moves by dz
            for (int i = 1; i <= j && i <= n; ++i)
                out.ztilde(i) = kt.ztilde(i) - dz;
        } else {
            // kappa'_j = kappa_j * c_j / w_j
            const TaskSpec& tj = ts.task(j);
            if (!tj.kappa)
                throw std::invalid_argument("missing percentile data: task " + std::to_string(j) +
                                            " has no kappa");
            const double stretch = static_cast<double>(*tj.kappa) / fm *
                                   (static_cast<double>(ev.observed_cycles) /
                                        static_cast<double>(ev.old_wcec) -
                                    1.0);
            const int k = policy.window.value_or(n);
            for (int i = 1; i <= j && i <= n; ++i) {
                const int m_ik = std::min(i + k - 1, n);
                out.ztilde(i) = kt.ztilde(i) - (j <= m_ik ? stretch : dz);
            }
        }
    } else {
        for (int i = 1; i <= j && i <= n; ++i)
            out.ztilde(i) = kt.ztilde(i) - (1.0 - policy.delta_for(i)) * dz;
    }
    out.ztilde(n + 1) = kt.deadline();
    return out;
}

OverrunAdaptation apply_overruns(std::vector<ScheduleFunction> schedules, KillTimes kt,
                                 TaskSet ts, std::vector<OverrunEvent> events,
                                 const KillPolicy& policy, const FrequencyMenu& menu,
                                 AdaptationMethod method) {
    if (method != AdaptationMethod::SchedCondition && method != AdaptationMethod::HorizontalShift)
        throw std::invalid_argument("apply_overruns needs an in-place adaptation method");
    std::sort(events.begin(), events.end(),
              [](const OverrunEvent& a, const OverrunEvent& b) {
                  return a.task_index < b.task_index;
              });
    std::set<int> seen;
    OverrunAdaptation result{std::move(schedules), std::move(kt), std::move(ts), {}};
    for (const OverrunEvent& ev : events) {
        if (!seen.insert(ev.task_index).second)
            throw std::invalid_argument("duplicate overrun event for task " +
                                        std::to_string(ev.task_index));
        if (!ev.is_increase()) {
            if (ev.observed_cycles == ev.old_wcec)
                continue; // boundary no-op
            throw std::invalid_argument("apply_overruns only folds WCEC increases");
        }
        // zones as seen after all previously applied events
        DangerZones zones = danger_zones(result.task_set, menu);
        if (method == AdaptationMethod::SchedCondition)
            result.schedules = adapt_schedulability_condition(result.schedules, ev, zones, menu);
        else
            result.schedules = adapt_horizontal_shift(result.schedules, ev, zones, menu);
        result.kill_times = adapt_kill_times(result.kill_times, policy, ev, result.task_set, menu);

        TaskSpec& tj = result.task_set.task(ev.task_index);
        tj.wcec = std::max(ev.observed_cycles, tj.wcec);
        if (tj.global_wcec && *tj.global_wcec < tj.wcec)
            tj.global_wcec = tj.wcec;
        if (policy.kind == KillPolicy::Kind::Percentile && tj.kappa) {
            double k = static_cast<double>(*tj.kappa);
            if (policy.kappa_transform == KillPolicy::KappaTransform::Stretch)
                k *= static_cast<double>(ev.observed_cycles) / static_cast<double>(ev.old_wcec);
            else
                k += static_cast<double>(ev.observed_cycles - ev.old_wcec);
            tj.kappa = std::clamp<Cycles>(std::llround(k), 1, tj.wcec);
        }
        if (ev.killed)
            result.notes.push_back("task " + std::to_string(ev.task_index) +
                                   ": WCEC set from a killed job's cut point (" +
                                   std::to_string(ev.observed_cycles) +
                                   " cycles); the true maximum may be larger and will be "
                                   "learned over later frames");
    }
    return result;
}

std::vector<ScheduleFunction> adapt_wcec_decrease(const std::vector<ScheduleFunction>& schedules,
                                                  const OverrunEvent& ev,
                                                  const DangerZones& zones,
                                                  const FrequencyMenu& menu) {
    (void)zones;
    if (ev.observed_cycles >= ev.old_wcec) {
        if (ev.observed_cycles == ev.old_wcec)
            return schedules; // zero shift, unit scale
        throw std::invalid_argument("not a decrease: c_j >= w_j");
    }
    const double shift =
        static_cast<double>(ev.old_wcec - ev.observed_cycles) / menu.fastest();
    const double ratio =
        static_cast<double>(ev.observed_cycles) / static_cast<double>(ev.old_wcec);
    std::vector<ScheduleFunction> out;
    out.reserve(schedules.size());
    for (int i = 1; i <= static_cast<int>(schedules.size()); ++i) {
        const ScheduleFunction& s = schedules[static_cast<std::size_t>(i - 1)];
        if (i > ev.task_index) {
            out.push_back(s);
        } else if (i == ev.task_index) {
            std::vector<SchedulePoint> pts = s.points();
            for (SchedulePoint& p : pts)
                p.f = menu.ceil(p.f * ratio);
            out.push_back(normalize_schedule(std::move(pts)));
        } else {
            // right shift: S'_i(t) = S_i(t - shift), first value extended back to 0
            std::vector<SchedulePoint> pts = s.points();
            for (SchedulePoint& p : pts)
                p.t += shift;
            pts.front().t = 0.0;
            out.push_back(normalize_schedule(std::move(pts)));
        }
    }
    return out;
}

} // namespace dvs
