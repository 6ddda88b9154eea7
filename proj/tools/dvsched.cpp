// Batch front end: parse an experiment file, run scenarios or frame-length
// sweeps, materialize workloads, or just validate and print the timing layout.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <system_error>

#include <CLI11.hpp>

#include "dvs/experiment.hpp"
#include "dvs/feasibility.hpp"
#include "dvs/kill_policy.hpp"
#include "dvs/scenario.hpp"
#include "dvs/workload.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

struct CommonArgs {
    std::string experiment_path;
    dvs::CliOverrides overrides;
    bool quiet = false;
};

dvs::Experiment load(const CommonArgs& args) {
    dvs::Experiment exp = dvs::load_experiment(args.experiment_path);
    dvs::apply_overrides(exp, args.overrides);
    return exp;
}

void ensure_out_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw std::system_error(ec, "cannot create output directory " + dir);
}

int cmd_run(const CommonArgs& args) {
    dvs::Experiment exp = load(args);
    ensure_out_dir(exp.output_dir);
    if (!args.quiet) {
        if (auto warn = exp.config.task_set.feasibility_warning(exp.config.menu))
            std::cerr << "warning: " << *warn << "\n";
    }
    dvs::MetricsSeries m = dvs::run_scenario(exp.config, exp.workload);
    dvs::SweepRow row;
    row.deadline = exp.config.task_set.deadline();
    row.energy = m.total_energy;
    row.kill_rate = m.kill_rate();
    row.fairness_all = m.fairness_all();
    row.fairness_killed = m.fairness_killed();
    const auto dir = std::filesystem::path(exp.output_dir);
    dvs::write_metrics_csv((dir / "metrics.csv").string(), {row});
    dvs::write_frame_series_csv((dir / "frames.csv").string(), m);
    if (!args.quiet)
        std::cout << dvs::format_summary(row.deadline, m) << "\n";
    return kExitOk;
}

int cmd_sweep(const CommonArgs& args) {
    dvs::Experiment exp = load(args);
    if (exp.sweep_deadlines.empty())
        throw dvs::ConfigError("sweep_deadlines: empty sweep");
    ensure_out_dir(exp.output_dir);
    auto rows = dvs::sweep_frame_length(exp.config, exp.sweep_deadlines, exp.workload);
    if (!args.quiet) {
        for (const auto& r : rows)
            if (r.warning)
                std::cerr << "warning: D=" << r.deadline << ": " << *r.warning << "\n";
    }
    const auto dir = std::filesystem::path(exp.output_dir);
    dvs::write_metrics_csv((dir / "sweep.csv").string(), rows);
    if (!args.quiet)
        std::cout << rows.size() << " sweep points written to "
                  << (dir / "sweep.csv").string() << "\n";
    return kExitOk;
}

int cmd_gen_workload(const CommonArgs& args) {
    dvs::Experiment exp = load(args);
    if (exp.workload.kind != dvs::WorkloadModel::Kind::TwoPhaseNormal)
        throw dvs::ConfigError("workload: gen-workload needs a synthetic workload, "
                               "this experiment already uses a trace");
    ensure_out_dir(exp.output_dir);
    auto demands = dvs::generate_workload(
        exp.workload, dvs::mix_seed(exp.config.seed, 0x10000)); // repetition-0 stream
    const auto path = std::filesystem::path(exp.output_dir) / "workload.csv";
    dvs::write_trace(path.string(), demands);
    if (!args.quiet)
        std::cout << "wrote " << demands.size() << " frames x " << demands.front().size()
                  << " tasks to " << path.string() << "\n";
    return kExitOk;
}

int cmd_validate(const CommonArgs& args) {
    dvs::Experiment exp = load(args);
    const dvs::TaskSet& ts = exp.config.task_set;
    const dvs::FrequencyMenu& menu = exp.config.menu;

    // kill_times needs kappas for percentile policies; borrow the scenario's
    // calibration by running zero frames is overkill, so estimate here.
    dvs::TaskSet annotated = ts;
    if (exp.config.kill_policy.kind == dvs::KillPolicy::Kind::Percentile) {
        for (int i = 1; i <= annotated.size(); ++i)
            if (!annotated.task(i).kappa)
                annotated.task(i).kappa = annotated.task(i).wcec;
    }
    dvs::DangerZones zones = dvs::danger_zones(annotated, menu);
    dvs::KillTimes kt = dvs::kill_times(exp.config.kill_policy, annotated, zones, menu);

    std::printf("tasks: %d, deadline D = %.12g, menu f_1..f_M =", ts.size(), ts.deadline());
    for (double f : menu.values())
        std::printf(" %.12g", f);
    std::printf("\n");
    double load = static_cast<double>(ts.total_wcec()) / menu.fastest();
    std::printf("sum(wcec)/f_M = %.12g vs D = %.12g\n", load, ts.deadline());
    if (auto warn = ts.feasibility_warning(menu))
        std::printf("warning: %s\n", warn->c_str());
    for (int i = 1; i <= ts.size(); ++i) {
        std::printf("T_%d: wcec=%lld z_%d=%.12g ztilde_%d=%.12g (kill/suspend limit)\n", i,
                    static_cast<long long>(ts.task(i).wcec), i, zones.z(i), i + 1,
                    kt.ztilde(i + 1));
    }
    std::printf("ztilde_%d = D = %.12g\n", ts.size() + 1, kt.ztilde(ts.size() + 1));
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"frame-based DVS scheduling simulator"};
    app.require_subcommand(1);

    CommonArgs args;

    auto add_subcommand = [&](const std::string& name, const std::string& desc) {
        CLI::App* cmd = app.add_subcommand(name, desc);
        cmd->add_option("experiment", args.experiment_path, "experiment file (JSON)")
            ->required();
        cmd->add_option_function<std::uint64_t>(
            "--seed", [&](std::uint64_t v) { args.overrides.seed = v; },
            "override the experiment seed");
        cmd->add_option_function<std::string>(
            "--out", [&](const std::string& v) { args.overrides.output_dir = v; },
            "override the output directory");
        cmd->add_option_function<int>(
            "--reps", [&](int v) { args.overrides.repetitions = v; },
            "override the repetition count");
        cmd->add_flag("--quiet", args.quiet, "suppress the summary line and warnings");
        return cmd;
    };

    CLI::App* run = add_subcommand("run", "run the scenario and write metrics files");
    CLI::App* sweep = add_subcommand("sweep", "run one scenario per sweep deadline");
    CLI::App* gen = add_subcommand("gen-workload", "materialize the synthetic workload as a "
                                                   "trace file");
    CLI::App* validate =
        add_subcommand("validate", "check the experiment and print zones and kill times");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(args);
        if (sweep->parsed())
            return cmd_sweep(args);
        if (gen->parsed())
            return cmd_gen_workload(args);
        if (validate->parsed())
            return cmd_validate(args);
    } catch (const std::system_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitValidation;
}
