#include "dvs/kill_policy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dvs {

KillPolicy KillPolicy::at_danger_zone() {
    return KillPolicy{};
}

KillPolicy KillPolicy::at_deadline() {
    KillPolicy p;
    p.kind = Kind::AtDeadline;
    return p;
}

KillPolicy KillPolicy::hybrid(double delta) {
    return hybrid(std::vector<double>{delta});
}

KillPolicy KillPolicy::hybrid(std::vector<double> delta) {
    KillPolicy p;
    p.kind = Kind::Hybrid;
    p.delta = std::move(delta);
    return p;
}

KillPolicy KillPolicy::percentile(double epsilon, std::optional<int> window) {
    return percentile(std::vector<double>{epsilon}, window);
}

KillPolicy KillPolicy::percentile(std::vector<double> epsilon, std::optional<int> window) {
    KillPolicy p;
    p.kind = Kind::Percentile;
    p.epsilon = std::move(epsilon);
    p.window = window;
    return p;
}

double KillPolicy::delta_for(int i) const {
    if (kind == Kind::AtDangerZone)
        return 0.0;
    if (kind == Kind::AtDeadline)
        return 1.0;
    if (delta.size() == 1)
        return delta.front();
    return delta[static_cast<std::size_t>(i - 1)];
}

double KillPolicy::epsilon_for(int i) const {
    if (epsilon.size() == 1)
        return epsilon.front();
    return epsilon[static_cast<std::size_t>(i - 1)];
}

void KillPolicy::validate(int n_tasks) const {
    auto check_vec = [n_tasks](const std::vector<double>& v, const char* name) {
        if (v.size() != 1 && v.size() != static_cast<std::size_t>(n_tasks))
            throw std::invalid_argument(std::string(name) + ": need one value or one per task");
        for (double x : v)
            if (!(x >= 0.0 && x <= 1.0))
                throw std::invalid_argument(std::string(name) + ": values must be in [0,1]");
    };
    switch (kind) {
    case Kind::Hybrid:
        if (delta.empty())
            throw std::invalid_argument("hybrid policy needs delta");
        check_vec(delta, "delta");
        break;
    case Kind::Percentile:
        if (epsilon.empty())
            throw std::invalid_argument("percentile policy needs epsilon");
        check_vec(epsilon, "epsilon");
        if (window && *window < 1)
            throw std::invalid_argument("window: must be >= 1");
        break;
    default:
        break;
    }
}

KillTimes::KillTimes(std::vector<double> ztilde) : v_(std::move(ztilde)) {
    if (v_.size() < 2)
        throw std::invalid_argument("kill times need at least two entries");
}

KillTimes kill_times(const KillPolicy& policy, const TaskSet& ts, const DangerZones& zones,
                     const FrequencyMenu& menu) {
    const int n = ts.size();
    policy.validate(n);
    const double d = ts.deadline();
    std::vector<double> zt(static_cast<std::size_t>(n) + 1);

    if (policy.kind == KillPolicy::Kind::Percentile) {
        for (int i = 1; i <= n; ++i)
            if (!ts.task(i).kappa)
                throw std::invalid_argument("missing percentile data: task " + std::to_string(i) +
                                            " has no kappa");
        const double fm = menu.fastest();
        const int k = policy.window.value_or(n);
        // ztilde_{i+1} = D - (1/f_M)(sum_{j=i+1..min(i+K,N)} kappa_j + sum_{j=i+K+1..N} w_j)
        for (int i = 0; i <= n; ++i) {
            Cycles budget = 0;
            const int kap_hi = std::min(i + k, n);
            for (int j = i + 1; j <= kap_hi; ++j)
                budget += *ts.task(j).kappa;
            for (int j = i + k + 1; j <= n; ++j)
                budget += ts.task(j).wcec;
            zt[static_cast<std::size_t>(i)] = d - static_cast<double>(budget) / fm;
        }
    } else {
        // Hybrid family; AtDangerZone and AtDeadline are delta = 0 and delta = 1.
        for (int i = 1; i <= n; ++i) {
            const double zi = zones.z(i);
            zt[static_cast<std::size_t>(i - 1)] = zi + (d - zi) * policy.delta_for(i);
        }
    }
    zt.back() = d; // T_N is killed at D, firm deadline
    return KillTimes(std::move(zt));
}

Cycles percentile_kappa(std::vector<Cycles> samples, double epsilon, Cycles wcec) {
    if (samples.empty())
        throw std::invalid_argument("percentile_kappa: empty samples");
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("percentile_kappa: epsilon must be in [0,1]");
    if (epsilon >= 1.0)
        return 1; // full tolerance: the argmin is unbounded below, clamp to 1 cycle
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    std::vector<Cycles> candidates(samples);
    candidates.push_back(wcec);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (Cycles cand : candidates) {
        // strict inequality P[c < K], per the argmin definition
        auto below = std::lower_bound(samples.begin(), samples.end(), cand) - samples.begin();
        if (static_cast<double>(below) / n >= 1.0 - epsilon)
            return std::clamp<Cycles>(cand, 1, wcec);
    }
    return wcec;
}

} // namespace dvs
