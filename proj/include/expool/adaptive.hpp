#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "expool/config.hpp"
#include "expool/interval.hpp"
#include "expool/learner.hpp"
#include "expool/monocarpic.hpp"

namespace expool {

// Geometric ladder of restart scales for the adaptive-adversary learner.
// With accuracy eps = 2^-k: epochs of B = 1/eps^2 days; R = k threads; thread
// r targets eps_r = 2^(r-1) * eps, restarts every 1/eps_r^2 days (so thread 1
// restarts once per epoch, the top thread every four days), and samples
// width_r fresh experts per restart column.
struct AdaptiveSchedule {
    double epsilon = 0.25;
    int k = 2;
    std::uint64_t B = 16;
    int R = 2;
    std::vector<double> eps_r;
    std::vector<std::uint64_t> restart_len;
    std::vector<std::size_t> width;      // N_r, floored to >= 1
    std::uint64_t life_epochs = 1;       // pool residency: ~eps*sqrt(n) epochs

    static AdaptiveSchedule make(std::uint64_t n, double epsilon, const Constants& cst);
};

// Diagnostic record of one pool admission (kept outside the metered state).
struct AdmissionEvent {
    std::uint64_t day = 0;
    int thread = 0;
    ExpertId expert = kAbstain;
    double candidate_loss = 0.0;
    double realized_loss = 0.0;
};

// The adaptive-adversary algorithm: a short-memory branch (fresh random
// samples hedged at several restart scales) and a long-memory branch
// (observe-then-commit pools feeding a monocarpic aggregate), arbitrated by
// a two-slot interval learner.  The action is committed before the day's
// losses are revealed; candidates under observation are never played.
class AdaptiveLearner : public Learner {
public:
    AdaptiveLearner(const GameConfig& cfg, MemoryMeter* meter, RandomnessSource rng);
    ~AdaptiveLearner() override;

    ExpertId act(std::uint64_t day) override;
    void observe(const DayLoss& loss) override;

    const AdaptiveSchedule& schedule() const { return sched_; }
    std::vector<ExpertId> pool_members(int r) const;        // thread r's pool
    const std::vector<AdmissionEvent>& admissions() const { return admission_log_; }
    const MonocarpicExpert& long_branch() const { return *mono_; }

private:
    struct Column {
        std::vector<ExpertId> ids;
        MwuState mwu;
    };
    struct RexpThread {
        std::vector<Column> columns;     // one per day of the restart
        double realized = 0.0;           // thread's own loss this restart
        std::uint64_t restarts = 0;
        MeterLease lease;
    };
    struct Watchlist {
        std::map<ExpertId, double> cum;  // observed candidates this restart
        MeterLease lease;
    };

    void day_start(std::uint64_t t);
    void day_end(std::uint64_t t, const DayLoss& loss);
    void sync_long_members(std::uint64_t t);

    std::uint64_t n_, T_;
    Constants cst_;
    AdaptiveSchedule sched_;
    SquintGrid grid_;
    RandomnessSource rexp_rng_, watch_rng_, ir_rng_;
    MemoryMeter* meter_;

    std::vector<RexpThread> rexp_;
    std::vector<Watchlist> watch_;
    std::vector<std::map<ExpertId, std::uint64_t>> pools_;  // id -> expiry epoch
    MeterLease pools_lease_, grid_lease_;

    std::unique_ptr<IntervalRegret> epoch_ir_;  // over the R threads, per epoch
    std::uint64_t epoch_ir_births_ = 0;
    std::unique_ptr<MonocarpicExpert> mono_;
    IntervalRegret top_;                        // {short branch, long branch}

    std::uint64_t started_ = 0;
    std::vector<ExpertId> rexp_props_;          // day scratch
    ExpertId random_prop_ = kAbstain, long_prop_ = kAbstain;
    std::vector<AdmissionEvent> admission_log_;
};

// One adaptive instance per expert group with a top-level MWU; the per-group
// accuracy is coarsened to keep each group within its share of the budget.
std::unique_ptr<Learner> make_grouped_adaptive(const GameConfig& cfg, MemoryMeter* meter,
                                               RandomnessSource rng);

}  // namespace expool
