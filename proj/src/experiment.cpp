#include "dvs/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace dvs {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key()))
            throw ConfigError(where + ": unknown key '" + it.key() + "'");
    }
}

template <typename T>
T get_required(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key))
        throw ConfigError(where + ": missing required key '" + key + "'");
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(where + "." + key + ": wrong type");
    }
}

template <typename T>
std::optional<T> get_optional(const json& obj, const std::string& key,
                              const std::string& where) {
    if (!obj.contains(key) || obj.at(key).is_null())
        return std::nullopt;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(where + "." + key + ": wrong type");
    }
}

std::vector<double> unit_interval_vector(const json& v, const std::string& where) {
    std::vector<double> out;
    if (v.is_number()) {
        out.push_back(v.get<double>());
    } else if (v.is_array()) {
        for (const auto& x : v) {
            if (!x.is_number())
                throw ConfigError(where + ": must be a number or array of numbers");
            out.push_back(x.get<double>());
        }
    } else {
        throw ConfigError(where + ": must be a number or array of numbers");
    }
    for (double x : out)
        if (!(x >= 0.0 && x <= 1.0))
            throw ConfigError(where + ": values must lie in [0,1]");
    return out;
}

KillPolicy parse_kill_policy(const json& obj) {
    const std::string where = "kill_policy";
    if (!obj.is_object())
        throw ConfigError(where + ": must be an object");
    reject_unknown_keys(obj, {"kind", "delta", "epsilon", "window", "kappa_transform"}, where);
    const std::string kind = get_required<std::string>(obj, "kind", where);
    KillPolicy p;
    if (kind == "at_danger_zone") {
        p = KillPolicy::at_danger_zone();
    } else if (kind == "at_deadline") {
        p = KillPolicy::at_deadline();
    } else if (kind == "hybrid") {
        if (!obj.contains("delta"))
            throw ConfigError(where + ".delta: required for hybrid");
        p = KillPolicy::hybrid(unit_interval_vector(obj.at("delta"), where + ".delta"));
    } else if (kind == "percentile") {
        if (!obj.contains("epsilon"))
            throw ConfigError(where + ".epsilon: required for percentile");
        p = KillPolicy::percentile(unit_interval_vector(obj.at("epsilon"), where + ".epsilon"),
                                   get_optional<int>(obj, "window", where));
        if (p.window && *p.window < 1)
            throw ConfigError(where + ".window: must be >= 1");
        auto tr = get_optional<std::string>(obj, "kappa_transform", where);
        if (tr) {
            if (*tr == "stretch")
                p.kappa_transform = KillPolicy::KappaTransform::Stretch;
            else if (*tr == "shift")
                p.kappa_transform = KillPolicy::KappaTransform::Shift;
            else
                throw ConfigError(where + ".kappa_transform: must be 'stretch' or 'shift'");
        }
    } else {
        throw ConfigError(where + ".kind: unknown policy '" + kind + "'");
    }
    return p;
}

ResumePolicy parse_resume(const json& obj) {
    const std::string where = "resume";
    reject_unknown_keys(
        obj, {"timing", "order", "speed", "rounds", "escalation", "boost_others"}, where);
    ResumePolicy rp;
    auto timing = get_optional<std::string>(obj, "timing", where);
    if (timing) {
        if (*timing == "end_of_frame")
            rp.timing = ResumePolicy::Timing::AtEndOfFrame;
        else if (*timing == "first_slack")
            rp.timing = ResumePolicy::Timing::AtFirstSlack;
        else
            throw ConfigError(where + ".timing: unknown value '" + *timing + "'");
    }
    auto order = get_optional<std::string>(obj, "order", where);
    if (order) {
        if (*order == "by_index")
            rp.order = ResumePolicy::Order::ByIndex;
        else if (*order == "random")
            rp.order = ResumePolicy::Order::Random;
        else if (*order == "shortest_remaining_first")
            rp.order = ResumePolicy::Order::ShortestRemainingFirst;
        else
            throw ConfigError(where + ".order: unknown value '" + *order + "'");
    }
    auto speed = get_optional<std::string>(obj, "speed", where);
    if (speed) {
        if (*speed == "max_frequency")
            rp.speed = ResumePolicy::Speed::MaxFrequency;
        else if (*speed == "global_wcec_bound")
            rp.speed = ResumePolicy::Speed::GlobalWcecBound;
        else if (*speed == "alpha_bound")
            rp.speed = ResumePolicy::Speed::AlphaBound;
        else if (*speed == "current_speed")
            rp.speed = ResumePolicy::Speed::CurrentSpeed;
        else
            throw ConfigError(where + ".speed: unknown value '" + *speed + "'");
    }
    auto rounds = get_optional<std::string>(obj, "rounds", where);
    if (rounds) {
        if (*rounds == "run_to_completion")
            rp.rounds = ResumePolicy::Rounds::RunToCompletion;
        else if (*rounds == "fair_rounds")
            rp.rounds = ResumePolicy::Rounds::FairRounds;
        else
            throw ConfigError(where + ".rounds: unknown value '" + *rounds + "'");
    }
    auto esc = get_optional<std::string>(obj, "escalation", where);
    if (esc) {
        if (*esc == "none")
            rp.escalation = ResumePolicy::Escalation::None;
        else if (*esc == "max_frequency")
            rp.escalation = ResumePolicy::Escalation::MaxFrequency;
        else if (*esc == "laxity_scaled")
            rp.escalation = ResumePolicy::Escalation::LaxityScaled;
        else
            throw ConfigError(where + ".escalation: unknown value '" + *esc + "'");
    }
    rp.boost_others = get_optional<bool>(obj, "boost_others", where).value_or(false);
    return rp;
}

WorkloadModel parse_workload(const json& obj, const std::filesystem::path& base_dir) {
    const std::string where = "workload";
    if (!obj.is_object())
        throw ConfigError(where + ": must be an object");
    const std::string kind = get_required<std::string>(obj, "kind", where);
    WorkloadModel model;
    if (kind == "two_phase_normal") {
        reject_unknown_keys(obj, {"kind", "phase1_frames", "phase2_frames", "tasks"}, where);
        model.kind = WorkloadModel::Kind::TwoPhaseNormal;
        model.phase1_frames = get_required<int>(obj, "phase1_frames", where);
        model.phase2_frames = get_required<int>(obj, "phase2_frames", where);
        if (!obj.contains("tasks") || !obj.at("tasks").is_array() || obj.at("tasks").empty())
            throw ConfigError(where + ".tasks: need a non-empty array");
        int idx = 0;
        for (const auto& t : obj.at("tasks")) {
            const std::string tw = where + ".tasks[" + std::to_string(idx++) + "]";
            reject_unknown_keys(t, {"mean1", "stddev1", "mean2", "stddev2", "wcec1", "wcec2"},
                                tw);
            TaskPhaseParams p;
            p.mean1 = get_required<double>(t, "mean1", tw);
            p.stddev1 = get_required<double>(t, "stddev1", tw);
            p.mean2 = get_optional<double>(t, "mean2", tw).value_or(p.mean1);
            p.stddev2 = get_optional<double>(t, "stddev2", tw).value_or(p.stddev1);
            p.wcec1 = get_optional<Cycles>(t, "wcec1", tw);
            p.wcec2 = get_optional<Cycles>(t, "wcec2", tw);
            model.tasks.push_back(p);
        }
    } else if (kind == "trace") {
        reject_unknown_keys(obj, {"kind", "path", "phase2_start", "phase2_wcec"}, where);
        model.kind = WorkloadModel::Kind::Trace;
        const std::string rel = get_required<std::string>(obj, "path", where);
        model.trace = read_trace((base_dir / rel).string());
        model.trace_phase2_start = get_optional<int>(obj, "phase2_start", where);
        if (auto w2 = get_optional<std::vector<Cycles>>(obj, "phase2_wcec", where))
            model.trace_phase2_wcec = *w2;
    } else {
        throw ConfigError(where + ".kind: unknown workload '" + kind + "'");
    }
    try {
        model.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string(e.what()));
    }
    return model;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string fmt_opt(const std::optional<double>& v) {
    return v ? fmt(*v) : "nan";
}

} // namespace

Experiment load_experiment(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::system_error(errno, std::generic_category(),
                                "cannot open experiment file: " + path);
    json doc;
    try {
        doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
    if (!doc.is_object())
        throw ConfigError(path + ": experiment file must hold a JSON object");
    reject_unknown_keys(doc,
                        {"tasks", "deadline", "frequencies", "kill_policy", "resume",
                         "adaptation", "workload", "sweep_deadlines", "repetitions", "seed",
                         "calibration_samples", "output_dir"},
                        "experiment");

    const auto base_dir = std::filesystem::path(path).parent_path();
    WorkloadModel workload = parse_workload(
        doc.contains("workload") ? doc.at("workload") : json::object(), base_dir);

    const double deadline = get_required<double>(doc, "deadline", "experiment");
    if (!(deadline > 0))
        throw ConfigError("deadline: must be positive");

    std::vector<TaskSpec> tasks;
    if (doc.contains("tasks")) {
        if (!doc.at("tasks").is_array() || doc.at("tasks").empty())
            throw ConfigError("tasks: need a non-empty array");
        int idx = 0;
        for (const auto& t : doc.at("tasks")) {
            const std::string tw = "tasks[" + std::to_string(idx++) + "]";
            reject_unknown_keys(t, {"wcec", "global_wcec", "alpha", "kappa"}, tw);
            TaskSpec spec;
            spec.wcec = get_required<Cycles>(t, "wcec", tw);
            spec.global_wcec = get_optional<Cycles>(t, "global_wcec", tw);
            spec.overrun_factor = get_optional<double>(t, "alpha", tw);
            spec.kappa = get_optional<Cycles>(t, "kappa", tw);
            tasks.push_back(spec);
        }
    } else if (workload.kind == WorkloadModel::Kind::TwoPhaseNormal) {
        // default scheduler knowledge: the phase-1 worst cases
        for (int i = 1; i <= workload.n_tasks(); ++i) {
            TaskSpec spec;
            spec.wcec = workload.phase_wcec(i, 1);
            tasks.push_back(spec);
        }
    } else {
        throw ConfigError("tasks: required for trace workloads");
    }

    std::vector<double> freqs =
        get_required<std::vector<double>>(doc, "frequencies", "experiment");
    SimConfig config = [&] {
        try {
            return SimConfig(TaskSet(std::move(tasks), deadline),
                             FrequencyMenu(std::move(freqs)),
                             doc.contains("kill_policy") ? parse_kill_policy(doc.at("kill_policy"))
                                                         : KillPolicy::at_danger_zone());
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError(std::string(e.what()));
        }
    }();

    if (doc.contains("resume") && !doc.at("resume").is_null())
        config.resume = parse_resume(doc.at("resume"));

    if (auto adapt = get_optional<std::string>(doc, "adaptation", "experiment")) {
        if (*adapt == "none")
            config.adaptation = AdaptationMethod::None;
        else if (*adapt == "sched_condition")
            config.adaptation = AdaptationMethod::SchedCondition;
        else if (*adapt == "horizontal_shift")
            config.adaptation = AdaptationMethod::HorizontalShift;
        else if (*adapt == "clairvoyant")
            config.adaptation = AdaptationMethod::Clairvoyant;
        else
            throw ConfigError("adaptation: unknown method '" + *adapt + "'");
    }

    config.repetitions = get_optional<int>(doc, "repetitions", "experiment").value_or(300);
    if (config.repetitions < 1)
        throw ConfigError("repetitions: must be >= 1");
    config.seed = get_optional<std::uint64_t>(doc, "seed", "experiment").value_or(0);
    if (auto cs = get_optional<int>(doc, "calibration_samples", "experiment")) {
        if (*cs < 1)
            throw ConfigError("calibration_samples: must be >= 1");
        config.calibration_samples = *cs;
    }

    if (workload.n_tasks() != config.task_set.size())
        throw ConfigError("workload task count (" + std::to_string(workload.n_tasks()) +
                          ") does not match tasks (" + std::to_string(config.task_set.size()) +
                          ")");
    try {
        config.kill_policy.validate(config.task_set.size());
        if (config.resume)
            config.resume->validate(config.task_set);
    } catch (const std::exception& e) {
        throw ConfigError(std::string(e.what()));
    }

    Experiment exp(std::move(config));
    exp.workload = std::move(workload);
    if (doc.contains("sweep_deadlines")) {
        exp.sweep_deadlines = get_required<std::vector<double>>(doc, "sweep_deadlines",
                                                                "experiment");
        for (double d : exp.sweep_deadlines)
            if (!(d > 0))
                throw ConfigError("sweep_deadlines: values must be positive");
    }
    exp.output_dir =
        get_optional<std::string>(doc, "output_dir", "experiment").value_or("out");
    return exp;
}

void apply_overrides(Experiment& exp, const CliOverrides& ov) {
    if (ov.seed)
        exp.config.seed = *ov.seed;
    if (ov.output_dir)
        exp.output_dir = *ov.output_dir;
    if (ov.repetitions) {
        if (*ov.repetitions < 1)
            throw ConfigError("repetitions: must be >= 1");
        exp.config.repetitions = *ov.repetitions;
    }
}

void write_metrics_csv(const std::string& path, const std::vector<SweepRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::system_error(errno, std::generic_category(), "cannot write " + path);
    out << "deadline,energy,kill_rate,fairness_all,fairness_killed\n";
    for (const SweepRow& r : rows) {
        out << fmt(r.deadline) << ',' << fmt(r.energy) << ',' << fmt(r.kill_rate) << ','
            << fmt_opt(r.fairness_all) << ',' << fmt_opt(r.fairness_killed) << "\n";
    }
    if (!out)
        throw std::system_error(errno, std::generic_category(), "write failed: " + path);
}

void write_frame_series_csv(const std::string& path, const MetricsSeries& metrics) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::system_error(errno, std::generic_category(), "cannot write " + path);
    out << "frame,energy,kills\n";
    for (std::size_t f = 0; f < metrics.frame_energy.size(); ++f)
        out << f << ',' << fmt(metrics.frame_energy[f]) << ','
            << fmt(metrics.frame_kills[f]) << "\n";
    if (!out)
        throw std::system_error(errno, std::generic_category(), "write failed: " + path);
}

std::string format_summary(double deadline, const MetricsSeries& m) {
    std::ostringstream os;
    os << "D=" << fmt(deadline) << " kill_rate=" << fmt(m.kill_rate())
       << " energy=" << fmt(m.total_energy) << " fairness_all=" << fmt_opt(m.fairness_all())
       << " fairness_killed=" << fmt_opt(m.fairness_killed());
    return os.str();
}

} // namespace dvs
