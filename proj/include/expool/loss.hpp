#pragma once

#include <cstdint>
#include <vector>

namespace expool {

// Experts are dense ids 0..n-1.
using ExpertId = std::int32_t;

// Sentinel action when a learner has nothing to play; it costs a full unit.
inline constexpr ExpertId kAbstain = -1;
inline constexpr double kAbstainLoss = 1.0;

// One day's loss vector, one entry per expert, each in [0, 1].
struct DayLoss {
    std::vector<double> values;

    std::size_t size() const { return values.size(); }

    // Loss of an action; the abstain sentinel costs 1.
    double of(ExpertId i) const { return i == kAbstain ? kAbstainLoss : values[static_cast<std::size_t>(i)]; }
};

// Clamps every entry into [0, 1] in place; returns how many were out of range.
std::size_t clamp_losses(DayLoss& loss);

// Largest k such that 2^k divides t.  t must be positive.
int pw(std::uint64_t t);

}  // namespace expool
