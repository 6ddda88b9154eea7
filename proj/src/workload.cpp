#include "dvs/workload.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace dvs {

namespace {

Cycles default_wcec(double mean, double stddev) {
    return static_cast<Cycles>(std::ceil(mean + 3.0 * stddev));
}

} // namespace

int WorkloadModel::frames() const {
    if (kind == Kind::Trace)
        return static_cast<int>(trace.size());
    return phase1_frames + phase2_frames;
}

int WorkloadModel::n_tasks() const {
    if (kind == Kind::Trace)
        return trace.empty() ? 0 : static_cast<int>(trace.front().size());
    return static_cast<int>(tasks.size());
}

Cycles WorkloadModel::phase_wcec(int task_index, int phase) const {
    if (kind == Kind::TwoPhaseNormal) {
        const TaskPhaseParams& p = tasks[static_cast<std::size_t>(task_index - 1)];
        if (phase == 1)
            return p.wcec1 ? *p.wcec1 : default_wcec(p.mean1, p.stddev1);
        return p.wcec2 ? *p.wcec2 : default_wcec(p.mean2, p.stddev2);
    }
    if (phase == 2) {
        if (static_cast<int>(trace_phase2_wcec.size()) >= task_index)
            return trace_phase2_wcec[static_cast<std::size_t>(task_index - 1)];
        throw std::invalid_argument("trace has no phase-2 WCEC data");
    }
    // phase 1 of a trace: max over its phase-1 rows
    int split = trace_phase2_start.value_or(static_cast<int>(trace.size()));
    Cycles best = 1;
    for (int f = 0; f < split; ++f)
        best = std::max(best, trace[static_cast<std::size_t>(f)]
                                  [static_cast<std::size_t>(task_index - 1)]);
    return best;
}

std::optional<int> WorkloadModel::phase2_start() const {
    if (kind == Kind::TwoPhaseNormal)
        return phase1_frames;
    return trace_phase2_start;
}

void WorkloadModel::validate() const {
    if (kind == Kind::TwoPhaseNormal) {
        if (tasks.empty())
            throw std::invalid_argument("workload: no tasks");
        if (phase1_frames < 0 || phase2_frames < 0 || frames() == 0)
            throw std::invalid_argument("workload: frame counts must be positive");
        for (const TaskPhaseParams& p : tasks) {
            if (p.mean1 < 1 || p.mean2 < 1 || p.stddev1 < 0 || p.stddev2 < 0)
                throw std::invalid_argument("workload: means must be >= 1, stddevs >= 0");
        }
    } else {
        if (trace.empty())
            throw std::invalid_argument("workload: empty trace");
        for (const auto& row : trace) {
            if (row.size() != trace.front().size())
                throw std::invalid_argument("workload: ragged trace");
            for (Cycles c : row)
                if (c < 1)
                    throw std::invalid_argument("workload: trace demands must be >= 1");
        }
        if (trace_phase2_start &&
            (*trace_phase2_start < 0 || *trace_phase2_start > static_cast<int>(trace.size())))
            throw std::invalid_argument("workload: phase2 start out of range");
    }
}

Cycles truncated_normal_draw(std::mt19937_64& rng, double mean, double stddev, Cycles cap) {
    if (stddev == 0.0)
        return std::min<Cycles>(cap, std::max<Cycles>(1, std::llround(mean)));
    std::normal_distribution<double> dist(mean, stddev);
    Cycles draw;
    do {
        draw = std::llround(dist(rng));
    } while (draw < 1 || draw > cap);
    return draw;
}

std::vector<std::vector<Cycles>> generate_workload(const WorkloadModel& model,
                                                   std::uint64_t seed) {
    model.validate();
    if (model.kind == WorkloadModel::Kind::Trace)
        return model.trace;

    std::mt19937_64 rng(seed);
    const int n = model.n_tasks();
    std::vector<std::vector<Cycles>> out;
    out.reserve(static_cast<std::size_t>(model.frames()));
    for (int frame = 0; frame < model.frames(); ++frame) {
        const int phase = frame < model.phase1_frames ? 1 : 2;
        std::vector<Cycles> row(static_cast<std::size_t>(n));
        for (int task = 1; task <= n; ++task) {
            const TaskPhaseParams& p = model.tasks[static_cast<std::size_t>(task - 1)];
            const double mean = phase == 1 ? p.mean1 : p.mean2;
            const double stddev = phase == 1 ? p.stddev1 : p.stddev2;
            row[static_cast<std::size_t>(task - 1)] =
                truncated_normal_draw(rng, mean, stddev, model.phase_wcec(task, phase));
        }
        out.push_back(std::move(row));
    }
    return out;
}

std::vector<std::vector<Cycles>> read_trace(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::system_error(errno, std::generic_category(),
                                "cannot open trace file: " + path);
    std::vector<std::vector<Cycles>> rows;
    std::string line;
    int lineno = 0;
    bool header_seen = false;
    std::size_t columns = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#')
            continue;
        if (!header_seen) {
            header_seen = true;
            columns = static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
            if (line.rfind("task_", 0) != 0)
                throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                         ": expected header row task_1,...,task_N");
            continue;
        }
        std::vector<Cycles> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t pos = 0;
                long long v = std::stoll(cell, &pos);
                while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos])))
                    ++pos;
                if (pos != cell.size() || v < 1)
                    throw std::invalid_argument(cell);
                row.push_back(v);
            } catch (const std::exception&) {
                throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                         ": bad cycle count '" + cell + "'");
            }
        }
        if (row.size() != columns)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected " + std::to_string(columns) + " columns, got " +
                                     std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty())
        throw std::runtime_error(path + ": trace has no data rows");
    return rows;
}

void write_trace(const std::string& path, const std::vector<std::vector<Cycles>>& demands) {
    std::ofstream out(path);
    if (!out)
        throw std::system_error(errno, std::generic_category(),
                                "cannot write trace file: " + path);
    if (demands.empty())
        throw std::runtime_error("refusing to write an empty trace");
    for (std::size_t t = 0; t < demands.front().size(); ++t)
        out << (t ? "," : "") << "task_" << (t + 1);
    out << "\n";
    for (const auto& row : demands) {
        for (std::size_t t = 0; t < row.size(); ++t)
            out << (t ? "," : "") << row[t];
        out << "\n";
    }
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 step over the pair; cheap and well mixed
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace dvs
