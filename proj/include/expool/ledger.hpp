#pragma once

#include <cstdint>
#include <vector>

#include "expool/loss.hpp"

namespace expool {

// Harness-side scorekeeper.  Tracks the algorithm's cumulative loss and the
// cumulative loss of every expert; regret is the difference against the best
// fixed expert in hindsight.  This bookkeeping belongs to the referee, not
// the learner, so it is deliberately not metered.
class RegretLedger {
public:
    explicit RegretLedger(std::size_t n) : expert_cum_(n, 0.0) {}

    // Record one day: the action the algorithm played and the full loss vector.
    void record(ExpertId action, const DayLoss& loss);

    double algorithm_cum() const { return alg_cum_; }
    double best_expert_cum() const;
    // Cumulative regret so far: algorithm loss minus the best expert's loss.
    double regret() const { return alg_cum_ - best_expert_cum(); }

    const std::vector<double>& expert_cums() const { return expert_cum_; }
    std::uint64_t days() const { return days_; }

private:
    std::vector<double> expert_cum_;
    double alg_cum_ = 0.0;
    std::uint64_t days_ = 0;
};

}  // namespace expool
