#include "dvs/scenario.hpp"

#include <random>
#include <stdexcept>

namespace dvs {

namespace {

// Independent stream tags hashed with the base seed.
constexpr std::uint64_t kWorkloadStream = 0x10000;
constexpr std::uint64_t kEngineStream = 0x20000;
constexpr std::uint64_t kKappaStream = 0x30000;

// Estimate kappa_i(eps) for every task from the given phase's demand
// distribution. The scheduler is assumed to know the current distribution the
// same way it knows the WCECs.
void calibrate_kappas(TaskSet& ts, const WorkloadModel& model, const KillPolicy& policy,
                      int phase, std::uint64_t seed, int samples) {
    if (policy.kind != KillPolicy::Kind::Percentile)
        return;
    std::mt19937_64 rng(mix_seed(seed, kKappaStream + static_cast<std::uint64_t>(phase)));
    for (int i = 1; i <= ts.size(); ++i) {
        std::vector<Cycles> obs;
        if (model.kind == WorkloadModel::Kind::TwoPhaseNormal) {
            const TaskPhaseParams& p = model.tasks[static_cast<std::size_t>(i - 1)];
            const double mean = phase == 1 ? p.mean1 : p.mean2;
            const double stddev = phase == 1 ? p.stddev1 : p.stddev2;
            const Cycles cap = model.phase_wcec(i, phase);
            obs.reserve(static_cast<std::size_t>(samples));
            for (int s = 0; s < samples; ++s)
                obs.push_back(truncated_normal_draw(rng, mean, stddev, cap));
        } else {
            const int split = model.phase2_start().value_or(static_cast<int>(model.trace.size()));
            const int lo = phase == 1 ? 0 : split;
            const int hi = phase == 1 ? split : static_cast<int>(model.trace.size());
            for (int f = lo; f < hi; ++f)
                obs.push_back(model.trace[static_cast<std::size_t>(f)]
                                         [static_cast<std::size_t>(i - 1)]);
            if (obs.empty())
                throw std::invalid_argument("percentile policy: trace has no frames to "
                                            "calibrate kappa from");
        }
        ts.task(i).kappa = percentile_kappa(std::move(obs), policy.epsilon_for(i),
                                            ts.task(i).wcec);
    }
}

struct ScenarioState {
    TaskSet ts;
    std::vector<ScheduleFunction> schedules;
    DangerZones zones;
    KillTimes kt;

    explicit ScenarioState(const TaskSet& base, const FrequencyMenu& menu,
                           const KillPolicy& policy)
        : ts(base), schedules(build_baseline_schedules(ts, menu)),
          zones(danger_zones(ts, menu)), kt(kill_times(policy, ts, zones, menu)) {}

    void rebuild(const FrequencyMenu& menu, const KillPolicy& policy) {
        schedules = build_baseline_schedules(ts, menu);
        zones = danger_zones(ts, menu);
        kt = kill_times(policy, ts, zones, menu);
    }
};

} // namespace

SimConfig SimConfig::with_deadline(double d) const {
    SimConfig out(TaskSet(task_set.tasks(), d), menu, kill_policy);
    out.resume = resume;
    out.adaptation = adaptation;
    out.repetitions = repetitions;
    out.seed = seed;
    out.calibration_samples = calibration_samples;
    return out;
}

MetricsSeries run_scenario(const SimConfig& config, const WorkloadModel& workload) {
    workload.validate();
    if (workload.n_tasks() != config.task_set.size())
        throw std::invalid_argument("workload task count does not match the task set");
    config.kill_policy.validate(config.task_set.size());
    if (config.resume)
        config.resume->validate(config.task_set);
    if (config.repetitions < 1)
        throw std::invalid_argument("repetitions must be >= 1");
    if (config.adaptation == AdaptationMethod::Clairvoyant && !workload.phase2_start())
        throw std::invalid_argument("clairvoyant adaptation needs a workload with phase "
                                    "information");

    // Scheduler-side knowledge at scenario start: assumed WCECs plus, for
    // percentile policies, kappas from the phase-1 distribution.
    TaskSet base = config.task_set;
    calibrate_kappas(base, workload, config.kill_policy, 1, config.seed,
                     config.calibration_samples);

    const int frames = workload.frames();
    MetricsAccumulator acc(base.size(), frames);
    const std::optional<int> phase2 = workload.phase2_start();

    for (int rep = 0; rep < config.repetitions; ++rep) {
        const auto demands = generate_workload(
            workload, mix_seed(config.seed, kWorkloadStream + static_cast<std::uint64_t>(rep)));
        std::mt19937_64 engine_rng(
            mix_seed(config.seed, kEngineStream + static_cast<std::uint64_t>(rep)));

        ScenarioState state(base, config.menu, config.kill_policy);
        for (int frame = 0; frame < frames; ++frame) {
            if (config.adaptation == AdaptationMethod::Clairvoyant && phase2 &&
                frame == *phase2) {
                // the idealized "two phases" scheduler: new WCECs (and kappas)
                // become known exactly at the boundary
                for (int i = 1; i <= state.ts.size(); ++i) {
                    Cycles w2 = workload.phase_wcec(i, 2);
                    TaskSpec& t = state.ts.task(i);
                    t.wcec = std::max<Cycles>(w2, 1);
                    if (t.global_wcec && *t.global_wcec < t.wcec)
                        t.global_wcec = t.wcec;
                    if (t.kappa)
                        t.kappa = std::min(*t.kappa, t.wcec);
                }
                calibrate_kappas(state.ts, workload, config.kill_policy, 2, config.seed,
                                 config.calibration_samples);
                state.rebuild(config.menu, config.kill_policy);
            }

            FrameSetup setup;
            setup.ts = &state.ts;
            setup.menu = &config.menu;
            setup.schedules = &state.schedules;
            setup.zones = &state.zones;
            setup.kill_times = &state.kt;
            setup.resume = config.resume;

            FrameResult result =
                run_frame(setup, demands[static_cast<std::size_t>(frame)], engine_rng);
            acc.add_frame(frame, result);

            if ((config.adaptation == AdaptationMethod::SchedCondition ||
                 config.adaptation == AdaptationMethod::HorizontalShift) &&
                !result.overruns.empty()) {
                OverrunAdaptation adapted = apply_overruns(
                    std::move(state.schedules), std::move(state.kt), std::move(state.ts),
                    result.overruns, config.kill_policy, config.menu, config.adaptation);
                state.ts = std::move(adapted.task_set);
                state.schedules = std::move(adapted.schedules);
                state.kt = std::move(adapted.kill_times);
                state.zones = danger_zones(state.ts, config.menu);
            }
        }
        acc.end_repetition();
    }
    return acc.finish();
}

std::vector<SweepRow> sweep_frame_length(const SimConfig& config,
                                         const std::vector<double>& deadlines,
                                         const WorkloadModel& workload) {
    if (deadlines.empty())
        throw std::invalid_argument("empty sweep");
    std::vector<SweepRow> rows;
    rows.reserve(deadlines.size());
    for (double d : deadlines) {
        if (d <= 0)
            throw std::invalid_argument("sweep deadlines must be positive");
        SimConfig point = config.with_deadline(d);
        SweepRow row;
        row.deadline = d;
        row.warning = point.task_set.feasibility_warning(point.menu);
        MetricsSeries m = run_scenario(point, workload);
        row.energy = m.total_energy;
        row.kill_rate = m.kill_rate();
        row.fairness_all = m.fairness_all();
        row.fairness_killed = m.fairness_killed();
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace dvs
