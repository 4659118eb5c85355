#pragma once

#include <cstdint>
#include <vector>

#include "expool/hedger.hpp"
#include "expool/meter.hpp"
#include "expool/rng.hpp"

namespace expool {

// Aligned block (level, index): level-a block b spans days
// [2^a (b-1) + 1, 2^a b].  Blocks at one level tile the horizon.
struct DyadicBlock {
    int level = 0;
    std::uint64_t index = 1;

    std::uint64_t first_day() const { return (index - 1) * (1ULL << level) + 1; }
    std::uint64_t last_day() const { return index * (1ULL << level); }
    bool operator==(const DyadicBlock&) const = default;
};

// Number of block levels a horizon uses: [0, log2 T) for powers of two,
// rounded up otherwise, and never less than one.
int block_levels(std::uint64_t horizon);

// The block containing day t at each level, lowest level first; exactly
// block_levels(horizon) entries.
std::vector<DyadicBlock> effective_blocks(std::uint64_t t, std::uint64_t horizon);

// Greedy aligned decomposition of [t1, t2] into maximal blocks, left to
// right; at most two blocks per length class.
std::vector<DyadicBlock> dyadic_decompose(std::uint64_t t1, std::uint64_t t2,
                                          std::uint64_t horizon);

// Hedges over the aligned blocks of its horizon: each live block runs its own
// multiplicative-weights instance over the member slots, a second-order
// weight (from the learning-rate mixture) scores how well each block's
// proposals have tracked the mixture's own imputed loss, and each day one
// block is sampled by weight and its proposal is played.
//
// Only the one live block per level is stored; a block that has not started
// yet would have accumulated nothing (its imputed and realized losses agree
// while it is dormant), so it can be created on first use with fresh state,
// and an expired block is never consulted again.  That keeps the footprint at
// block_levels * (members + 2) words.
class IntervalRegret {
public:
    // `members` slots; losses are delivered per slot.  (n, T) scale the
    // embedded learning rates.  The grid is shared, owned by the caller.
    IntervalRegret(std::size_t members, std::uint64_t horizon, std::uint64_t n, std::uint64_t T,
                   const SquintGrid* grid, RandomnessSource rng, MemoryMeter* meter,
                   const char* meter_label);
    ~IntervalRegret() { lease_.release(); }

    // Commit a proposal for local day tau (1-based); returns a member slot.
    std::size_t propose(std::uint64_t tau);

    // Deliver the day's per-slot losses; must follow propose(tau).
    void update(const std::vector<double>& slot_losses);

    std::size_t members() const { return members_; }
    int levels() const { return static_cast<int>(levels_.size()); }

    // Introspection for tests.
    const SquintAccumulator& accumulator(int level) const { return levels_[level].acc; }
    const MwuState& block_weights(int level) const { return levels_[level].mwu; }
    const std::vector<std::size_t>& last_proposals() const { return proposals_; }
    const std::vector<double>& last_block_distribution() const { return block_p_; }
    double last_imputed_loss() const { return last_bar_; }

private:
    struct Level {
        SquintAccumulator acc;
        MwuState mwu;
        std::uint64_t block_start = 0;  // first day of the live block
    };

    std::size_t members_;
    std::uint64_t horizon_;
    const SquintGrid* grid_;
    RandomnessSource rng_;
    std::vector<Level> levels_;
    MeterLease lease_;

    // Day scratch (exempt from metering).
    std::vector<std::size_t> proposals_;
    std::vector<double> block_p_;
    double last_bar_ = 0.0;
};

}  // namespace expool
