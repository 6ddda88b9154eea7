#include "dvs/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace dvs {

double MetricsSeries::kill_rate() const {
    if (jobs_total == 0)
        return 0.0;
    return static_cast<double>(jobs_killed + jobs_dropped) / static_cast<double>(jobs_total);
}

std::optional<double> MetricsSeries::fairness_all() const {
    return fairness(*this, FairnessVariant::AllInstances);
}

std::optional<double> MetricsSeries::fairness_killed() const {
    return fairness(*this, FairnessVariant::KilledOnly);
}

std::optional<double> fairness(const MetricsSeries& m, FairnessVariant variant) {
    double lo = 0, hi = 0;
    bool any = false;
    if (variant == FairnessVariant::AllInstances) {
        for (double l : m.laxity_all) {
            if (!any) {
                lo = hi = l;
                any = true;
            } else {
                lo = std::min(lo, l);
                hi = std::max(hi, l);
            }
        }
    } else {
        for (const auto& l : m.laxity_killed) {
            if (!l)
                continue; // task never lost an instance, excluded from the ratio
            if (!any) {
                lo = hi = *l;
                any = true;
            } else {
                lo = std::min(lo, *l);
                hi = std::max(hi, *l);
            }
        }
    }
    if (!any)
        return std::nullopt;
    if (hi == 0.0)
        return 1.0; // every defined laxity is zero: equally starved
    return lo / hi;
}

MetricsAccumulator::MetricsAccumulator(int n_tasks, int n_frames)
    : n_tasks_(n_tasks), n_frames_(n_frames), frame_energy_(static_cast<std::size_t>(n_frames)),
      frame_kills_(static_cast<std::size_t>(n_frames)),
      ratio_sum_all_(static_cast<std::size_t>(n_tasks)),
      ratio_sum_killed_(static_cast<std::size_t>(n_tasks)),
      count_all_(static_cast<std::size_t>(n_tasks)),
      count_killed_(static_cast<std::size_t>(n_tasks)) {}

void MetricsAccumulator::add_frame(int frame_index, const FrameResult& frame) {
    if (static_cast<int>(frame.tasks.size()) != n_tasks_)
        throw std::invalid_argument("frame result has wrong task count");
    if (frame.deadline_miss)
        throw std::logic_error("deadline miss recorded; the engine must kill first");
    rep_energy_ += frame.energy;
    frame_energy_[static_cast<std::size_t>(frame_index)] += frame.energy;
    for (int t = 0; t < n_tasks_; ++t) {
        const TaskFrameRecord& rec = frame.tasks[static_cast<std::size_t>(t)];
        const double ratio =
            rec.requested > 0 ? rec.executed / static_cast<double>(rec.requested) : 0.0;
        ratio_sum_all_[static_cast<std::size_t>(t)] += ratio;
        ++count_all_[static_cast<std::size_t>(t)];
        ++total_;
        if (rec.finished)
            ++finished_;
        if (rec.killed || rec.dropped) {
            ratio_sum_killed_[static_cast<std::size_t>(t)] += ratio;
            ++count_killed_[static_cast<std::size_t>(t)];
            frame_kills_[static_cast<std::size_t>(frame_index)] += 1.0;
            if (rec.killed)
                ++killed_;
            else
                ++dropped_;
        }
    }
}

void MetricsAccumulator::end_repetition() {
    ++repetitions_;
    total_energy_ += rep_energy_;
    rep_energy_ = 0;
}

MetricsSeries MetricsAccumulator::finish() const {
    MetricsSeries out;
    out.jobs_total = total_;
    out.jobs_finished = finished_;
    out.jobs_killed = killed_;
    out.jobs_dropped = dropped_;
    const double reps = repetitions_ > 0 ? static_cast<double>(repetitions_) : 1.0;
    out.total_energy = total_energy_ / reps;
    out.frame_energy.resize(static_cast<std::size_t>(n_frames_));
    out.frame_kills.resize(static_cast<std::size_t>(n_frames_));
    for (int f = 0; f < n_frames_; ++f) {
        out.frame_energy[static_cast<std::size_t>(f)] =
            frame_energy_[static_cast<std::size_t>(f)] / reps;
        out.frame_kills[static_cast<std::size_t>(f)] =
            frame_kills_[static_cast<std::size_t>(f)] / reps;
    }
    out.laxity_all.resize(static_cast<std::size_t>(n_tasks_));
    out.laxity_killed.resize(static_cast<std::size_t>(n_tasks_));
    for (int t = 0; t < n_tasks_; ++t) {
        auto ti = static_cast<std::size_t>(t);
        out.laxity_all[ti] =
            count_all_[ti] > 0 ? ratio_sum_all_[ti] / static_cast<double>(count_all_[ti]) : 1.0;
        if (count_killed_[ti] > 0)
            out.laxity_killed[ti] = ratio_sum_killed_[ti] / static_cast<double>(count_killed_[ti]);
    }
    return out;
}

} // namespace dvs
