#pragma once

#include <cstdint>
#include <vector>

#include "expool/loss.hpp"

namespace expool {

// A day proceeds strictly as: act() commits an action, the referee fetches
// the day's losses, observe() delivers them in a single pass.  The harness
// enforces this ordering structurally; learners never see a loss vector
// before committing.
class Learner {
public:
    virtual ~Learner() = default;

    // Commit the day's action.  `day` is 1-based.
    virtual ExpertId act(std::uint64_t day) = 0;

    // Receive the day's loss vector (full feedback).  Anything the learner
    // keeps from it past the end of the call must be metered.
    virtual void observe(const DayLoss& loss) = 0;

    // The distribution over experts behind the committed action, if this
    // learner plays an explicit one; valid between act() and observe().
    // Streams that react to strategies fall back to a point mass on the
    // committed action when this returns nullptr.
    virtual const std::vector<double>* strategy() const { return nullptr; }
};

}  // namespace expool
