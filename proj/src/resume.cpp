#include "dvs/resume.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dvs {

namespace {
constexpr double kTieEps = 1e-12;

double assumed_total(const TaskSpec& t, ResumePolicy::Speed mode) {
    if (mode == ResumePolicy::Speed::GlobalWcecBound) {
        if (!t.global_wcec)
            throw std::invalid_argument("task " + std::to_string(t.index) +
                                        " has no global_wcec");
        return static_cast<double>(*t.global_wcec);
    }
    if (!t.overrun_factor)
        throw std::invalid_argument("task " + std::to_string(t.index) + " has no overrun factor");
    return static_cast<double>(t.wcec) * (1.0 + *t.overrun_factor);
}
} // namespace

void ResumePolicy::validate(const TaskSet& ts) const {
    for (const TaskSpec& t : ts.tasks()) {
        if (speed == Speed::GlobalWcecBound && !t.global_wcec)
            throw std::invalid_argument("resume speed GlobalWcecBound requires global_wcec on "
                                        "every task");
        if (speed == Speed::AlphaBound && !t.overrun_factor)
            throw std::invalid_argument("resume speed AlphaBound requires overrun_factor on "
                                        "every task");
        if (order == Order::ShortestRemainingFirst && !t.global_wcec && !t.overrun_factor)
            throw std::invalid_argument("ShortestRemainingFirst needs a remaining-cycles bound "
                                        "(global_wcec or overrun_factor)");
    }
}

double resume_frequency(const SuspendedJob& job, double now, const TaskSet& ts,
                        const FrequencyMenu& menu, ResumePolicy::Speed mode) {
    if (now >= ts.deadline())
        throw std::invalid_argument("no time remaining");
    switch (mode) {
    case ResumePolicy::Speed::MaxFrequency:
        return menu.fastest();
    case ResumePolicy::Speed::CurrentSpeed:
        return job.frequency;
    case ResumePolicy::Speed::GlobalWcecBound:
    case ResumePolicy::Speed::AlphaBound: {
        double remaining = assumed_total(ts.task(job.task_index), mode) - job.cycles_done;
        if (remaining < 0.0)
            return menu.fastest(); // bound already exceeded, run as fast as possible
        return menu.ceil(remaining / (ts.deadline() - now));
    }
    }
    return menu.fastest();
}

double group_resume_frequency(const std::vector<SuspendedJob>& queue, double now,
                              const TaskSet& ts, const FrequencyMenu& menu) {
    if (queue.empty())
        throw std::invalid_argument("group_resume_frequency: empty queue");
    if (now >= ts.deadline())
        throw std::invalid_argument("no time remaining");
    double total = 0.0;
    for (const SuspendedJob& j : queue) {
        const TaskSpec& t = ts.task(j.task_index);
        if (!t.global_wcec)
            throw std::invalid_argument("task " + std::to_string(t.index) +
                                        " has no global_wcec");
        double deficit = static_cast<double>(*t.global_wcec) - j.cycles_done;
        if (deficit < 0.0)
            return menu.fastest(); // a member blew its bound: no usable estimate
        total += deficit;
    }
    return menu.ceil(total / (ts.deadline() - now));
}

std::vector<SuspendedJob> order_resume_queue(std::vector<SuspendedJob> queue,
                                             ResumePolicy::Order order, const TaskSet& ts,
                                             std::mt19937_64& rng) {
    if (queue.empty())
        throw std::invalid_argument("order_resume_queue: empty queue");
    switch (order) {
    case ResumePolicy::Order::ByIndex:
        std::sort(queue.begin(), queue.end(),
                  [](const SuspendedJob& a, const SuspendedJob& b) {
                      return a.task_index < b.task_index;
                  });
        break;
    case ResumePolicy::Order::Random:
        std::shuffle(queue.begin(), queue.end(), rng);
        break;
    case ResumePolicy::Order::ShortestRemainingFirst: {
        std::vector<std::pair<double, SuspendedJob>> keyed;
        keyed.reserve(queue.size());
        for (const SuspendedJob& j : queue) {
            const TaskSpec& t = ts.task(j.task_index);
            double deficit;
            if (t.global_wcec)
                deficit = static_cast<double>(*t.global_wcec) - j.cycles_done;
            else if (t.overrun_factor)
                deficit = static_cast<double>(t.wcec) * (1.0 + *t.overrun_factor) -
                          j.cycles_done;
            else
                throw std::invalid_argument("task " + std::to_string(t.index) +
                                            " has no remaining-cycles bound");
            keyed.emplace_back(deficit, j);
        }
        std::sort(keyed.begin(), keyed.end(),
                  [](const auto& a, const auto& b) {
                      if (a.first != b.first)
                          return a.first < b.first;
                      return a.second.task_index < b.second.task_index;
                  });
        for (std::size_t k = 0; k < queue.size(); ++k)
            queue[k] = keyed[k].second;
        break;
    }
    }
    return queue;
}

FairRoundsPlan allocate_fair_rounds(const std::vector<FairShareJob>& jobs, double slack_start,
                                    double deadline) {
    if (jobs.empty())
        throw std::invalid_argument("allocate_fair_rounds: no jobs");
    if (slack_start >= deadline)
        throw std::invalid_argument("allocate_fair_rounds: no slack");
    FairRoundsPlan plan;
    struct Live {
        int task_index;
        double need;
    };
    std::vector<Live> live;
    live.reserve(jobs.size());
    for (const FairShareJob& j : jobs)
        live.push_back({j.task_index, j.time_required});

    double now = slack_start;
    while (!live.empty() && deadline - now > kTieEps) {
        const double budget = (deadline - now) / static_cast<double>(live.size());
        std::vector<Live> survivors;
        for (Live& j : live) {
            FairSlice s;
            s.task_index = j.task_index;
            s.start = now;
            s.budget = budget;
            if (j.need <= budget + kTieEps) {
                s.used = j.need;
                s.finished = true;
            } else {
                s.used = budget;
                j.need -= budget;
                survivors.push_back(j);
            }
            now += s.used;
            plan.slices.push_back(s);
        }
        live = std::move(survivors);
        if (!live.empty() && deadline - now > kTieEps) {
            // leftover time exists, so these jobs run again: that is a preemption each
            plan.preemptions += static_cast<int>(live.size());
        }
    }
    plan.unused = live.empty() ? deadline - now : 0.0;
    return plan;
}

double boost_other_frequency(double scheduled, int n_suspended, const FrequencyMenu& menu) {
    std::size_t idx = menu.index_of(scheduled);
    std::size_t target = std::min(idx + static_cast<std::size_t>(std::max(n_suspended, 0)),
                                  menu.size() - 1);
    return menu.at(target);
}

double intra_task_escalation(double current, double overrun_start, double kill_limit,
                             double now, const FrequencyMenu& menu,
                             ResumePolicy::Escalation strategy) {
    if (strategy == ResumePolicy::Escalation::MaxFrequency)
        return menu.fastest();
    if (strategy == ResumePolicy::Escalation::None)
        return current;
    if (kill_limit <= overrun_start)
        return menu.fastest();
    double consumed = (now - overrun_start) / (kill_limit - overrun_start);
    if (consumed >= 1.0)
        return menu.fastest(); // laxity gone
    // Linear-in-laxity climb, never below the next menu step above the current speed.
    double scaled = current * (1.0 + std::max(consumed, 0.0));
    return std::max(menu.next_above(current), menu.ceil(scaled));
}

} // namespace dvs
