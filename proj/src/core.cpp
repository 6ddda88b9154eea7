#include "dvs/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dvs {

FrequencyMenu::FrequencyMenu(std::vector<double> freqs) : freqs_(std::move(freqs)) {
    if (freqs_.empty())
        throw std::invalid_argument("frequency menu must not be empty");
    double prev = 0.0;
    for (double f : freqs_) {
        if (!std::isfinite(f) || f <= 0.0)
            throw std::invalid_argument("frequencies must be positive and finite");
        if (f <= prev)
            throw std::invalid_argument("frequencies must be strictly increasing");
        prev = f;
    }
}

double FrequencyMenu::ceil(double x) const {
    auto it = std::lower_bound(freqs_.begin(), freqs_.end(), x);
    if (it == freqs_.end())
        return freqs_.back();
    return *it;
}

bool FrequencyMenu::is_member(double f) const {
    return std::binary_search(freqs_.begin(), freqs_.end(), f);
}

std::size_t FrequencyMenu::index_of(double f) const {
    auto it = std::lower_bound(freqs_.begin(), freqs_.end(), f);
    if (it == freqs_.end() || *it != f)
        throw std::invalid_argument("frequency is not a menu member");
    return static_cast<std::size_t>(it - freqs_.begin());
}

double FrequencyMenu::next_above(double f) const {
    auto it = std::upper_bound(freqs_.begin(), freqs_.end(), f);
    if (it == freqs_.end())
        return freqs_.back();
    return *it;
}

bool FrequencyMenu::has_between(double lo, double hi) const {
    auto it = std::upper_bound(freqs_.begin(), freqs_.end(), lo);
    return it != freqs_.end() && *it < hi;
}

TaskSet::TaskSet(std::vector<TaskSpec> tasks, double deadline)
    : tasks_(std::move(tasks)), deadline_(deadline) {
    if (tasks_.empty())
        throw std::invalid_argument("task set must not be empty");
    if (!std::isfinite(deadline_) || deadline_ <= 0.0)
        throw std::invalid_argument("deadline must be positive");
    for (std::size_t k = 0; k < tasks_.size(); ++k) {
        TaskSpec& ts = tasks_[k];
        if (ts.index == 0)
            ts.index = static_cast<int>(k + 1);
        else if (ts.index != static_cast<int>(k + 1))
            throw std::invalid_argument("task indices must be contiguous 1..N");
        if (ts.wcec < 1)
            throw std::invalid_argument("wcec must be at least 1 cycle");
        if (ts.global_wcec && *ts.global_wcec < ts.wcec)
            throw std::invalid_argument("global_wcec must be >= wcec");
        if (ts.overrun_factor && (*ts.overrun_factor < 0.0 || !std::isfinite(*ts.overrun_factor)))
            throw std::invalid_argument("overrun_factor must be non-negative");
        if (ts.kappa && (*ts.kappa < 1 || *ts.kappa > ts.wcec))
            throw std::invalid_argument("kappa must lie in [1, wcec]");
    }
}

Cycles TaskSet::total_wcec() const {
    Cycles sum = 0;
    for (const TaskSpec& t : tasks_)
        sum += t.wcec;
    return sum;
}

std::optional<std::string> TaskSet::feasibility_warning(const FrequencyMenu& menu) const {
    double load = static_cast<double>(total_wcec()) / menu.fastest();
    if (load <= deadline_)
        return std::nullopt;
    return "task set is overloaded: sum(wcec)/f_M = " + std::to_string(load) +
           " exceeds deadline " + std::to_string(deadline_);
}

ScheduleFunction::ScheduleFunction(std::vector<SchedulePoint> points)
    : points_(std::move(points)) {
    if (points_.empty())
        throw std::invalid_argument("empty schedule");
    if (points_.front().t != 0.0)
        throw std::invalid_argument("schedule must start at t = 0");
    for (std::size_t k = 0; k + 1 < points_.size(); ++k) {
        if (points_[k + 1].t <= points_[k].t)
            throw std::invalid_argument("breakpoint times must be strictly increasing");
    }
    for (const SchedulePoint& p : points_) {
        if (!std::isfinite(p.t) || !std::isfinite(p.f) || p.f <= 0.0)
            throw std::invalid_argument("breakpoints must be finite with positive frequency");
    }
}

double ScheduleFunction::value_at(double t) const {
    // k = max{j | points[j].t <= t}; the first point sits at 0, so t >= 0 always hits.
    auto it = std::upper_bound(points_.begin(), points_.end(), t,
                               [](double v, const SchedulePoint& p) { return v < p.t; });
    if (it == points_.begin())
        return points_.front().f;
    return (it - 1)->f;
}

void ScheduleFunction::validate_against(const FrequencyMenu& menu) const {
    for (const SchedulePoint& p : points_) {
        if (!menu.is_member(p.f))
            throw std::invalid_argument("schedule frequency is not a menu member");
    }
    if (points_.size() > menu.size())
        throw std::invalid_argument("schedule has more steps than menu frequencies");
}

ScheduleFunction normalize_schedule(std::vector<SchedulePoint> points) {
    if (points.empty())
        throw std::invalid_argument("empty schedule");
    std::vector<SchedulePoint> out;
    out.reserve(points.size());
    for (const SchedulePoint& p : points) {
        if (!out.empty() && p.t == out.back().t) {
            out.back() = p; // duplicate time: the last-inserted point wins
            continue;
        }
        out.push_back(p);
    }
    std::vector<SchedulePoint> merged;
    merged.reserve(out.size());
    for (const SchedulePoint& p : out) {
        if (!merged.empty() && p.f == merged.back().f)
            continue; // equal adjacent step, absorb
        merged.push_back(p);
    }
    return ScheduleFunction(std::move(merged));
}

} // namespace dvs
