#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "expool/interval.hpp"
#include "expool/loss.hpp"

namespace expool {

// Aggregates a churning population of experts into one opinion.  Members
// arrive (wake) and later die; each member lives through a ladder of
// doubling-lifetime buckets.  A freshly woken member enters bucket 1, whose
// inner learner restarts daily; at the end of day t, every bucket l <= pw(t)
// (pw = largest k with 2^k dividing t) is folded into bucket l+1, so a
// surviving member graduates into learners with ever longer attention spans.
// Dead members are charged unit loss until the next fold prunes them, which
// lets each inner learner keep a fixed slot list between its restarts.
//
// A member is identified by (expert, wake day).  Waking the same pair twice
// is rejected: a member that died stays dead, and a fresh admission of the
// same expert must use a later day.
class MonocarpicExpert {
public:
    MonocarpicExpert(std::uint64_t horizon, std::uint64_t n, std::uint64_t T,
                     const SquintGrid* grid, RandomnessSource rng, MemoryMeter* meter,
                     std::string meter_label);
    ~MonocarpicExpert();

    // Admit a member effective today; call before propose().  `day` keys the
    // member and is the caller's (global) day number.
    void wake(ExpertId expert, std::uint64_t day);

    // Mark the live member for `expert` dead; it keeps absorbing unit loss
    // until pruned.  Call before propose() on the day the death takes effect.
    void kill(ExpertId expert);

    bool has_live_member(ExpertId expert) const;
    std::vector<ExpertId> live_members() const;  // ascending expert id
    std::size_t member_count() const { return present_count_; }
    std::size_t live_count() const { return live_count_; }

    // One call per day, in this order.  propose() returns kAbstain when no
    // bucket has members.
    ExpertId propose();
    void update(const DayLoss& loss);

    // Introspection for tests: members currently in bucket l (1-based).
    std::vector<ExpertId> bucket_members(int l) const;
    int buckets() const { return static_cast<int>(buckets_.size()); }

private:
    struct Member {
        ExpertId expert = kAbstain;
        std::uint64_t birth = 0;
        bool alive = false;
        bool present = false;
    };
    struct Bucket {
        std::vector<std::size_t> members;            // registry indices
        std::unique_ptr<IntervalRegret> inner;       // null while empty
        std::uint64_t restarts = 0;                  // ordinal for rng labels
    };

    void rebuild_bucket(std::size_t bi, std::uint64_t period);
    double member_loss(std::size_t idx, const DayLoss& loss) const;

    std::uint64_t horizon_, n_, T_;
    const SquintGrid* grid_;
    RandomnessSource rng_;
    MemoryMeter* meter_;
    std::string label_;

    std::vector<Member> registry_;
    std::vector<std::size_t> free_slots_;
    std::size_t present_count_ = 0;
    std::size_t live_count_ = 0;

    std::vector<Bucket> buckets_;                    // bucket l at index l-1
    IntervalRegret top_;
    MeterLease lease_;

    std::uint64_t days_done_ = 0;
    bool proposed_ = false;
    std::vector<ExpertId> proposals_;                // per bucket, day scratch
    std::vector<std::size_t> proposal_slots_;
    std::vector<double> meta_losses_;
};

}  // namespace expool
