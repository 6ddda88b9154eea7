#ifndef DVS_RESUME_HPP
#define DVS_RESUME_HPP

#include <random>
#include <vector>

#include "dvs/core.hpp"
#include "dvs/feasibility.hpp"

namespace dvs {

/// A job taken off the CPU at its kill/suspend instant. Typically the job has
/// already overrun its wcec; under lenient policies (delta > 0) it may also have
/// been squeezed by a predecessor's overrun and carry fewer cycles.
struct SuspendedJob {
    int task_index = 0;
    double cycles_done = 0;  // c_i, cumulative over resumes (fractional mid-run)
    double suspended_at = 0;
    double frequency = 0;    // speed it was running at when suspended
};

struct ResumePolicy {
    enum class Timing { AtEndOfFrame, AtFirstSlack };
    enum class Order { ByIndex, Random, ShortestRemainingFirst };
    enum class Speed { MaxFrequency, GlobalWcecBound, AlphaBound, CurrentSpeed };
    enum class Rounds { RunToCompletion, FairRounds };
    enum class Escalation { None, MaxFrequency, LaxityScaled };

    Timing timing = Timing::AtEndOfFrame;
    Order order = Order::ByIndex;
    Speed speed = Speed::MaxFrequency;
    Rounds rounds = Rounds::RunToCompletion;
    Escalation escalation = Escalation::None; // intra-task speed-up once a job overruns
    bool boost_others = false;                // bump fresh tasks' speed while jobs wait

    /// GlobalWcecBound and ShortestRemainingFirst need W_i; AlphaBound needs alpha.
    void validate(const TaskSet& ts) const;
};

/// Lowest frequency that still fits the job's assumed remaining work into
/// [now, D). A bound already exceeded (negative remainder) falls back to f_M.
double resume_frequency(const SuspendedJob& job, double now, const TaskSet& ts,
                        const FrequencyMenu& menu, ResumePolicy::Speed mode);

/// ceil_F(sum of (W_i - c_i) over the queue / (D - now)); recompute before every
/// resume since earlier jobs may finish under budget.
double group_resume_frequency(const std::vector<SuspendedJob>& queue, double now,
                              const TaskSet& ts, const FrequencyMenu& menu);

std::vector<SuspendedJob> order_resume_queue(std::vector<SuspendedJob> queue,
                                             ResumePolicy::Order order, const TaskSet& ts,
                                             std::mt19937_64& rng);

struct FairShareJob {
    int task_index = 0;
    double time_required = 0; // run time still needed, at the speed it will use
};

struct FairSlice {
    int task_index = 0;
    double start = 0;
    double budget = 0;
    double used = 0;
    bool finished = false;
};

struct FairRoundsPlan {
    std::vector<FairSlice> slices; // in execution order across rounds
    int preemptions = 0;           // re-suspensions that are followed by another round
    double unused = 0;             // slack left after every job finished
};

/// Equal-time rounds over [slack_start, D): each live job gets (remaining)/|live|;
/// early finishers trigger another round over the survivors. Preemptions are
/// bounded by r(r-1)/2 for r jobs.
FairRoundsPlan allocate_fair_rounds(const std::vector<FairShareJob>& jobs, double slack_start,
                                    double deadline);

/// Menu frequency n_suspended positions above the scheduled one, saturating at f_M.
double boost_other_frequency(double scheduled, int n_suspended, const FrequencyMenu& menu);

/// Frequency for a job that overran its wcec and is resumed immediately at higher
/// speed. MaxFrequency jumps to f_M; LaxityScaled starts one menu step above the
/// current speed and climbs to f_M as the time left before kill_limit runs out.
double intra_task_escalation(double current, double overrun_start, double kill_limit,
                             double now, const FrequencyMenu& menu,
                             ResumePolicy::Escalation strategy);

} // namespace dvs

#endif
