#include "dvs/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace dvs {

namespace {

// Relative slack for frequency-vs-bound comparisons. The baseline builder is
// exactly tight at breakpoints, so equality must survive rounding.
constexpr double kRelTol = 1e-9;

bool freq_satisfies(double f, double bound) {
    return f >= bound - kRelTol * std::max(1.0, std::abs(bound));
}

} // namespace

DangerZones::DangerZones(std::vector<double> z, double deadline) : z_(std::move(z)) {
    if (z_.empty() || z_.back() != deadline)
        throw std::invalid_argument("danger zones must end at the deadline");
}

DangerZones danger_zones(const TaskSet& ts, const FrequencyMenu& menu) {
    const int n = ts.size();
    const double fm = menu.fastest();
    // Suffix cycle sums are integral, so each z_i is one subtraction and one
    // division away from exact.
    std::vector<double> z(static_cast<std::size_t>(n) + 1);
    Cycles suffix = 0;
    z[static_cast<std::size_t>(n)] = ts.deadline();
    for (int i = n; i >= 1; --i) {
        suffix += ts.task(i).wcec;
        z[static_cast<std::size_t>(i - 1)] = ts.deadline() - static_cast<double>(suffix) / fm;
    }
    return DangerZones(std::move(z), ts.deadline());
}

std::string FeasibilityCheck::message() const {
    if (feasible)
        return "feasible";
    std::ostringstream os;
    os << "task " << violation->task << " under-speed from t=" << violation->time
       << ": needs " << violation->required << ", schedule gives " << violation->available;
    return os.str();
}

FeasibilityCheck check_schedulability(const std::vector<ScheduleFunction>& schedules,
                                      const TaskSet& ts, const FrequencyMenu& menu) {
    if (static_cast<int>(schedules.size()) != ts.size())
        throw std::invalid_argument("one schedule function per task required");
    DangerZones zones = danger_zones(ts, menu);
    FeasibilityCheck out;
    for (int i = 1; i <= ts.size(); ++i) {
        const double zi = zones.z(i);
        const double zn = zones.z(i + 1);
        if (zi <= 0.0)
            continue; // empty domain, nothing to guarantee
        const double w = static_cast<double>(ts.task(i).wcec);
        const auto& pts = schedules[static_cast<std::size_t>(i - 1)].points();
        for (std::size_t k = 0; k < pts.size(); ++k) {
            const double a = pts[k].t;
            if (a >= zi)
                break;
            const double b = (k + 1 < pts.size()) ? std::min(pts[k + 1].t, zi) : zi;
            const double bound = w / (zn - b); // sup of w/(z_{i+1}-t) on [a, b)
            if (!freq_satisfies(pts[k].f, bound)) {
                out.feasible = false;
                // earliest t in the step where the bound crosses the frequency
                double cross = std::max(a, zn - w / pts[k].f);
                out.violation = FeasibilityViolation{i, cross, bound, pts[k].f};
                return out;
            }
        }
    }
    return out;
}

std::vector<ScheduleFunction> build_baseline_schedules(const TaskSet& ts,
                                                       const FrequencyMenu& menu) {
    DangerZones zones = danger_zones(ts, menu);
    const double fm = menu.fastest();
    std::vector<ScheduleFunction> out;
    out.reserve(static_cast<std::size_t>(ts.size()));
    for (int i = 1; i <= ts.size(); ++i) {
        const double zi = zones.z(i);
        const double zn = zones.z(i + 1);
        const double w = static_cast<double>(ts.task(i).wcec);
        if (zi <= 0.0) {
            // Task can only ever start inside (or at the edge of) its danger zone.
            out.push_back(ScheduleFunction({{0.0, fm}}));
            continue;
        }
        std::vector<SchedulePoint> pts;
        double f0 = menu.ceil(w / zn);
        pts.push_back({0.0, f0});
        for (std::size_t k = menu.index_of(f0); k + 1 < menu.size(); ++k) {
            // f_k stops being sufficient at z_{i+1} - w/f_k; switch up there.
            double t = zn - w / menu.at(k);
            if (t >= zi)
                break;
            pts.push_back({std::max(t, 0.0), menu.at(k + 1)});
        }
        out.push_back(normalize_schedule(std::move(pts)));
    }
    return out;
}

} // namespace dvs
