#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "expool/config.hpp"
#include "expool/hedger.hpp"
#include "expool/learner.hpp"
#include "expool/loss.hpp"
#include "expool/meter.hpp"
#include "expool/rng.hpp"

namespace expool {

inline constexpr std::uint64_t kNowDay = ~0ULL;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// One tracked admission of an expert.  The same expert admitted twice (same
// day or later) yields two independent entries with their own histories.
struct PoolEntry {
    int uid = -1;
    ExpertId expert = kAbstain;
    std::uint64_t entry_day = 0;
    double cum = 0.0;  // loss accumulated since entry
    // Frozen value of `cum` at the entry day of each later arrival; the value
    // at day d covers losses up to and excluding d.
    std::map<std::uint64_t, double> snaps;
    bool live = false;
};

// Holds every live entry of one learner and the snapshot matrix that lets any
// two entries be compared on a shared stretch of days.  A learner keeps one
// store even when its entries are split across several pools, so entries that
// later end up in the same pool can still be compared.
class EntryStore {
public:
    EntryStore(MemoryMeter* meter, std::string label);

    // Admission happens at the start of `day`, before losses: the new entry
    // starts at cum 0 and every other live entry freezes a snapshot at `day`.
    int admit(ExpertId expert, std::uint64_t day);
    void remove(int uid);
    void observe(const DayLoss& loss);

    // Drop snapshot days no live entry starts at; call after admissions and
    // evictions settle for the day.
    void prune_snapshots();

    const PoolEntry& entry(int uid) const { return entries_.at(uid); }
    bool is_live(int uid) const;
    std::vector<int> live_uids() const;
    std::size_t live_count() const { return live_count_; }

    // Loss of entry `uid` across days [from, to), both entry days of live
    // entries; `to == kNowDay` extends through the last observed day.  +inf
    // when the entry was admitted after `from` (the stretch is unobservable
    // to it) or when the stretch is empty.
    double span_loss(int uid, std::uint64_t from, std::uint64_t to) const;

    std::size_t words() const { return lease_.words(); }

private:
    void recharge();

    std::vector<PoolEntry> entries_;  // uid-indexed, dead slots kept
    std::size_t live_count_ = 0;
    MeterLease lease_;
};

// Total loss a family of entries can claim on the days target has lived,
// stitching segments at the entry days of family members admitted after the
// target and charging each segment to the best-placed family member.  +inf
// when the family is empty or cannot observe some segment.
double covering_benchmark(const EntryStore& store, const std::vector<int>& family,
                          int target_uid);

// Whether the family accounts for the target's record to within one unit.
bool is_covered(const EntryStore& store, const std::vector<int>& family, int target_uid);

// Unbiased size estimate from one Bernoulli(rate) pass over the pool.
double estimate_size(const std::vector<int>& pool, double rate, RandomnessSource& rng);

// Keep each uid independently with probability `rate`.
std::vector<int> sample_uids(const std::vector<int>& pool, double rate,
                             RandomnessSource& rng);

// Keep each expert id in [0, n) independently with probability `rate`.
std::vector<ExpertId> sample_experts(std::uint64_t n, double rate, RandomnessSource& rng);

// Remove (and destroy) pool members outside `family` that the family covers;
// family members always survive.  Returns the surviving uids in uid order.
std::vector<int> filter_covered(EntryStore& store, const std::vector<int>& family,
                                std::vector<int> pool);

// Combine two pools and repeatedly thin the union with sampled families until
// a size estimate falls under the threshold or the iteration budget runs out.
std::vector<int> merge_pools(EntryStore& store, const std::vector<int>& a,
                             const std::vector<int>& b, const Constants& cst,
                             RandomnessSource& rng);

// Epoch-pool learner: every block of B days it samples a few fresh experts
// into the working pool, follows multiplicative weights over all pooled
// entries for the block, and at block boundaries folds pools pairwise (the
// pool at history level l merges upward once every 2^l blocks), with
// merge_pools keeping the total footprint small.
class BaselineLearner : public Learner {
public:
    BaselineLearner(const GameConfig& cfg, MemoryMeter* meter, RandomnessSource rng);

    ExpertId act(std::uint64_t day) override;
    void observe(const DayLoss& loss) override;

    std::uint64_t block_len() const { return block_; }
    std::size_t pooled_entries() const { return store_.live_count(); }
    const EntryStore& store() const { return store_; }
    std::vector<std::size_t> subpool_sizes() const {
        std::vector<std::size_t> out;
        out.reserve(subpools_.size());
        for (const auto& p : subpools_) out.push_back(p.size());
        return out;
    }

private:
    void start_epoch(std::uint64_t day);
    void end_epoch();

    std::uint64_t n_, T_, block_, epoch_ = 0, day_ = 0;
    Constants cst_;
    EntryStore store_;
    std::vector<std::vector<int>> subpools_;
    std::vector<int> slots_;  // uid per weight slot for the current epoch
    MwuState mwu_;
    RandomnessSource sample_rng_, merge_rng_, act_rng_;
    MeterLease refs_lease_, mwu_lease_;
};

}  // namespace expool
