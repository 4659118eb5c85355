#pragma once

#include <cstdint>
#include <vector>

#include "expool/config.hpp"
#include "expool/learner.hpp"
#include "expool/monocarpic.hpp"
#include "expool/pool.hpp"

namespace expool {

// Restart/epoch calendar for the multi-thread pool maintainer.  Thread 1
// runs n epochs of B_1 = T/n days and never restarts; thread r >= 2 runs
// exactly two epochs of B_r = B_{r-1}/2 days and restarts every B_{r-1}
// days.  R is capped (r_max) to keep desk runs cheap.
struct ThreadSchedule {
    int R = 1;
    std::vector<std::uint64_t> block;    // B_r at index r-1
    std::vector<std::uint64_t> restart;  // T_r at index r-1

    static ThreadSchedule make(std::uint64_t n, std::uint64_t T, int r_max);
    bool new_epoch(int r, std::uint64_t day) const { return (day - 1) % block[r - 1] == 0; }
    bool new_restart(int r, std::uint64_t day) const {
        return (day - 1) % restart[r - 1] == 0;
    }
    bool epoch_end(int r, std::uint64_t day) const { return day % block[r - 1] == 0; }
};

// Multi-scale pool maintenance with a single aggregated player.  Each thread
// keeps a ladder of sub-pools exactly like the epoch-pool learner but plays
// nothing itself; whenever the lowest thread opening a fresh epoch coincides
// with higher threads hitting their restart, the expiring threads' pools are
// folded into that thread's working pool instead of being discarded.  One
// monocarpic aggregate runs over the union of all pools: an expert wakes when
// it first enters any pool and dies when every pool has dropped it, and its
// proposal is the action played.
class FullObliviousLearner : public Learner {
public:
    FullObliviousLearner(const GameConfig& cfg, MemoryMeter* meter, RandomnessSource rng);

    ExpertId act(std::uint64_t day) override;
    void observe(const DayLoss& loss) override;

    const ThreadSchedule& schedule() const { return sched_; }
    const EntryStore& store() const { return store_; }
    std::size_t union_entries() const { return store_.live_count(); }
    std::vector<int> thread_pool(int r, int level) const { return threads_[r - 1].pools[level]; }
    const MonocarpicExpert& player() const { return player_; }

private:
    struct Thread {
        std::vector<std::vector<int>> pools;  // ladder, level 0 is the working pool
        std::uint64_t epoch_in_restart = 0;
    };

    void day_start(std::uint64_t t);
    void day_end(std::uint64_t t);
    void sync_members(std::uint64_t t);
    std::vector<int> thread_union(const Thread& th) const;
    void recount_refs();

    std::uint64_t n_, T_;
    Constants cst_;
    ThreadSchedule sched_;
    EntryStore store_;
    std::vector<Thread> threads_;
    SquintGrid grid_;
    RandomnessSource sample_rng_, merge_rng_;
    MonocarpicExpert player_;
    MeterLease refs_lease_, grid_lease_;
    std::uint64_t started_ = 0;  // last day that ran day_start
};

// One multi-scale instance per expert group, hedged by a top-level MWU.
std::unique_ptr<Learner> make_grouped_oblivious(const GameConfig& cfg, MemoryMeter* meter,
                                                RandomnessSource rng);

}  // namespace expool
