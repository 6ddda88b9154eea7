#include "dvs/frame_engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dvs {

namespace {

struct Engine {
    const FrameSetup& setup;
    const std::vector<Cycles>& demands;
    std::mt19937_64& rng;
    FrameResult& out;
    double deadline;
    double fm;
    double tie;
    std::vector<SuspendedJob> queue;

    TaskFrameRecord& rec(int task_index) {
        return out.tasks[static_cast<std::size_t>(task_index - 1)];
    }

    double demand_of(int task_index) const {
        return static_cast<double>(demands[static_cast<std::size_t>(task_index - 1)]);
    }

    void segment(int task_index, double at, double dt, double f) {
        if (dt <= 0.0)
            return;
        TaskFrameRecord& r = rec(task_index);
        double cycles = dt * f;
        r.segments.push_back({at, cycles, f});
        r.executed += cycles;
        out.energy += energy_of(cycles, f);
    }

    // Run T_i from `start` until it finishes or hits `limit`.
    // Returns the time execution stopped; sets *finished.
    double run_fresh(int i, double start, double limit, bool* finished) {
        const TaskSpec& task = setup.ts->task(i);
        const double dem = demand_of(i);
        const double w = static_cast<double>(task.wcec);
        const double zone_start = setup.zones->z(i);

        double t = start;
        double done = 0.0;
        double f;
        if (t >= zone_start - tie) {
            f = fm; // started inside (or exactly at) its danger zone
        } else {
            f = (*setup.schedules)[static_cast<std::size_t>(i - 1)].value_at(t);
            if (setup.resume && setup.resume->boost_others && !queue.empty())
                f = boost_other_frequency(f, static_cast<int>(queue.size()), *setup.menu);
        }

        // Speeding up inside the own danger zone only makes sense when the policy
        // lets the task outlive the strict zone boundary.
        const bool zone_escalates =
            setup.kill_times->ztilde(i + 1) > setup.zones->z(i + 1) + tie;
        const bool intra_escalates =
            setup.resume && setup.resume->escalation != ResumePolicy::Escalation::None;
        double overrun_at = -1.0; // time the job crossed w_i cycles, if escalating
        double f_at_overrun = 0.0;

        while (true) {
            const double finish_t = t + (dem - done) / f;
            double next_t = std::min(finish_t, limit);

            enum class Ev { Run, Zone, Overrun, LaxityStep } ev = Ev::Run;
            if (zone_escalates && f < fm && t < zone_start && zone_start < next_t - tie) {
                next_t = zone_start;
                ev = Ev::Zone;
            }
            if (intra_escalates && overrun_at < 0.0 && done < w) {
                double cross = t + (w - done) / f;
                if (cross < next_t - tie) {
                    next_t = cross;
                    ev = Ev::Overrun;
                }
            }
            if (intra_escalates && overrun_at >= 0.0 && f < fm &&
                setup.resume->escalation == ResumePolicy::Escalation::LaxityScaled) {
                // the linear climb bumps one menu step when f_over*(1+consumed) passes f
                double step_at = overrun_at +
                                 (f / f_at_overrun - 1.0) * (limit - overrun_at);
                if (step_at > t + tie && step_at < next_t - tie) {
                    next_t = step_at;
                    ev = Ev::LaxityStep;
                }
            }

            segment(i, t, next_t - t, f);
            done += (next_t - t) * f;
            t = next_t;

            switch (ev) {
            case Ev::Run:
                if (finish_t <= limit + tie) {
                    *finished = true;
                    rec(i).executed = dem; // exact on completion
                    return finish_t;
                }
                *finished = false;
                return limit;
            case Ev::Zone:
                f = fm;
                break;
            case Ev::Overrun:
                overrun_at = t;
                f_at_overrun = f;
                f = std::max(f, intra_task_escalation(f, overrun_at, limit, t, *setup.menu,
                                                      setup.resume->escalation));
                break;
            case Ev::LaxityStep:
                f = setup.menu->next_above(f);
                break;
            }
        }
    }

    // Resume frequency for `job`, recomputed over the whole queue for the
    // bound-based modes (earlier resumes may have finished under budget).
    double resume_speed(const SuspendedJob& job, double now) const {
        const ResumePolicy& rp = *setup.resume;
        switch (rp.speed) {
        case ResumePolicy::Speed::MaxFrequency:
            return fm;
        case ResumePolicy::Speed::CurrentSpeed:
            return job.frequency;
        case ResumePolicy::Speed::GlobalWcecBound:
        case ResumePolicy::Speed::AlphaBound: {
            double total = 0.0;
            for (const SuspendedJob& q : queue) {
                const TaskSpec& task = setup.ts->task(q.task_index);
                double bound = rp.speed == ResumePolicy::Speed::GlobalWcecBound
                                   ? static_cast<double>(*task.global_wcec)
                                   : static_cast<double>(task.wcec) *
                                         (1.0 + *task.overrun_factor);
                double deficit = bound - q.cycles_done;
                if (deficit < 0.0)
                    return fm; // a bound is already blown: no usable estimate
                total += deficit;
            }
            return setup.menu->ceil(total / (deadline - now));
        }
        }
        return fm;
    }

    // Run queued jobs to completion, in policy order, until `end`.
    double run_window(double t, double end) {
        while (!queue.empty() && end - t > tie) {
            queue = order_resume_queue(std::move(queue), setup.resume->order, *setup.ts, rng);
            SuspendedJob& job = queue.front();
            const double f = resume_speed(job, t);
            const double remaining = demand_of(job.task_index) - job.cycles_done;
            const double finish_t = t + remaining / f;
            if (finish_t <= end + tie) {
                segment(job.task_index, t, finish_t - t, f);
                TaskFrameRecord& r = rec(job.task_index);
                r.finished = true;
                r.executed = static_cast<double>(rec(job.task_index).requested);
                queue.erase(queue.begin());
                t = finish_t;
            } else {
                segment(job.task_index, t, end - t, f);
                job.cycles_done += (end - t) * f;
                job.suspended_at = end;
                job.frequency = f;
                t = end;
            }
        }
        return t;
    }

    // Equal-time rounds over [t, D): early finishers hand their leftover to the
    // survivors in a fresh round.
    double run_fair_rounds(double t) {
        while (!queue.empty() && deadline - t > tie) {
            auto ordered =
                order_resume_queue(std::move(queue), setup.resume->order, *setup.ts, rng);
            const double budget = (deadline - t) / static_cast<double>(ordered.size());
            std::vector<SuspendedJob> survivors;
            for (SuspendedJob& job : ordered) {
                if (deadline - t <= tie) {
                    survivors.push_back(job);
                    continue;
                }
                const double f = resume_frequency(job, t, *setup.ts, *setup.menu,
                                                  setup.resume->speed);
                const double remaining = demand_of(job.task_index) - job.cycles_done;
                const double need = remaining / f;
                if (need <= budget + tie) {
                    segment(job.task_index, t, need, f);
                    TaskFrameRecord& r = rec(job.task_index);
                    r.finished = true;
                    r.executed = static_cast<double>(r.requested);
                    t += need;
                } else {
                    segment(job.task_index, t, budget, f);
                    job.cycles_done += budget * f;
                    job.suspended_at = t + budget;
                    job.frequency = f;
                    t += budget;
                    survivors.push_back(job);
                }
            }
            queue = std::move(survivors);
        }
        return t;
    }

    void run() {
        const int n = setup.ts->size();
        double t = 0.0;
        for (int i = 1; i <= n; ++i) {
            TaskFrameRecord& r = rec(i);
            r.requested = demands[static_cast<std::size_t>(i - 1)];
            const double limit = std::min(setup.kill_times->ztilde(i + 1), deadline);
            if (t >= limit - tie || t >= deadline - tie) {
                r.dropped = true;
                continue;
            }
            bool finished = false;
            t = run_fresh(i, t, limit, &finished);
            if (finished) {
                r.finished = true;
                // first-slack resumption: offer the gap up to this task's kill limit
                if (setup.resume && setup.resume->timing == ResumePolicy::Timing::AtFirstSlack &&
                    !queue.empty() && t < limit - tie)
                    t = run_window(t, limit);
            } else if (setup.resume) {
                r.suspended = true;
                double last_f = r.segments.empty() ? fm : r.segments.back().f;
                queue.push_back({i, r.executed, t, last_f});
            } else {
                r.killed = true;
            }
        }

        if (setup.resume && !queue.empty() && t < deadline - tie) {
            if (setup.resume->rounds == ResumePolicy::Rounds::FairRounds)
                t = run_fair_rounds(t);
            else
                t = run_window(t, deadline);
        }
        for (const SuspendedJob& job : queue)
            rec(job.task_index).killed = true; // out of frame: no completion credit

        if (t > deadline + tie)
            out.deadline_miss = true; // never expected; kills must intervene first

        // Observed WCEC increases, for between-frame adaptation.
        for (int i = 1; i <= n; ++i) {
            const TaskFrameRecord& r = rec(i);
            if (r.dropped)
                continue;
            const Cycles w = setup.ts->task(i).wcec;
            Cycles c;
            bool cut;
            if (r.finished) {
                c = r.requested;
                cut = false;
            } else {
                c = static_cast<Cycles>(std::ceil(r.executed - 1e-9));
                cut = true;
            }
            if (c > w)
                out.overruns.push_back(OverrunEvent::increase(i, c, w, cut));
        }
    }
};

} // namespace

FrameResult run_frame(const FrameSetup& setup, const std::vector<Cycles>& demands,
                      std::mt19937_64& rng) {
    if (!setup.ts || !setup.menu || !setup.schedules || !setup.zones || !setup.kill_times)
        throw std::invalid_argument("run_frame: incomplete setup");
    const int n = setup.ts->size();
    if (static_cast<int>(demands.size()) != n)
        throw std::invalid_argument("run_frame: one demand per task required");
    if (static_cast<int>(setup.schedules->size()) != n)
        throw std::invalid_argument("run_frame: one schedule per task required");
    for (Cycles d : demands)
        if (d < 1)
            throw std::invalid_argument("run_frame: demands must be >= 1");
    if (setup.resume)
        setup.resume->validate(*setup.ts);

    FrameResult out;
    out.tasks.resize(static_cast<std::size_t>(n));
    Engine eng{setup,
               demands,
               rng,
               out,
               setup.ts->deadline(),
               setup.menu->fastest(),
               1e-9 * std::max(1.0, setup.ts->deadline()),
               {}};
    eng.run();
    return out;
}

} // namespace dvs
