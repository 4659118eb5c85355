#include "expool/oblivious.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <stdexcept>

#include "expool/logging.hpp"

namespace expool {

ThreadSchedule ThreadSchedule::make(std::uint64_t n, std::uint64_t T, int r_max) {
    if (!is_power_of_two(n) || !is_power_of_two(T) || T < 2 * n)
        throw ConfigError("thread schedule needs n, T powers of two with T >= 2n");
    ThreadSchedule s;
    s.R = std::max(1, std::min(log2_floor(T / n), r_max));
    s.block.resize(s.R);
    s.restart.resize(s.R);
    for (int r = 1; r <= s.R; ++r) {
        s.block[r - 1] = T / (n << (r - 1));
        s.restart[r - 1] = (r == 1) ? T : s.block[r - 2];
    }
    return s;
}

FullObliviousLearner::FullObliviousLearner(const GameConfig& cfg, MemoryMeter* meter,
                                           RandomnessSource rng)
    : n_(cfg.n),
      T_(cfg.T),
      cst_(cfg.constants),
      sched_(ThreadSchedule::make(cfg.n, cfg.T, cfg.constants.r_max)),
      store_(meter, "oblivious/entries"),
      grid_(SquintGrid::make(cfg.constants.squint_octaves)),
      sample_rng_(rng.fork("sample")),
      merge_rng_(rng.fork("merge")),
      player_(cfg.T, cfg.n, cfg.T, &grid_, rng.fork("player"), meter, "oblivious/player"),
      refs_lease_(meter, "oblivious/pool-refs"),
      grid_lease_(meter, "oblivious/rate-grid") {
    threads_.resize(sched_.R);
    for (int r = 1; r <= sched_.R; ++r) {
        const std::uint64_t epochs = sched_.restart[r - 1] / sched_.block[r - 1];
        threads_[r - 1].pools.resize(static_cast<std::size_t>(log2_ceil(epochs)) + 2);
    }
    grid_lease_.resize(3 * grid_.size());
}

std::vector<int> FullObliviousLearner::thread_union(const Thread& th) const {
    std::vector<int> u;
    for (const auto& p : th.pools) u.insert(u.end(), p.begin(), p.end());
    std::sort(u.begin(), u.end());
    return u;
}

void FullObliviousLearner::recount_refs() {
    std::size_t refs = 0;
    for (const Thread& th : threads_)
        for (const auto& p : th.pools) refs += p.size();
    refs_lease_.resize(refs);
}

void FullObliviousLearner::day_start(std::uint64_t t) {
    int r_min = 0;
    for (int r = 1; r <= sched_.R; ++r)
        if (sched_.new_epoch(r, t)) {
            r_min = r;
            break;
        }
    if (r_min != 0) {
        // Expiring higher threads hand their pools down rather than dropping
        // them; every thread above the lowest fresh-epoch thread is exactly
        // at its own restart boundary on such a day.
        for (int rp = sched_.R; rp > r_min; --rp) {
            assert(sched_.new_restart(rp, t));
            Thread& donor = threads_[rp - 1];
            std::vector<int> donated = thread_union(donor);
            if (!donated.empty())
                threads_[r_min - 1].pools[0] = merge_pools(
                    store_, threads_[r_min - 1].pools[0], donated, cst_, merge_rng_);
            for (auto& p : donor.pools) p.clear();
            donor.epoch_in_restart = 0;
        }
        for (int r = r_min; r <= sched_.R; ++r) {
            if (!sched_.new_epoch(r, t)) continue;
            Thread& th = threads_[r - 1];
            if (sched_.new_restart(r, t)) th.epoch_in_restart = 0;
            ++th.epoch_in_restart;
            const double rate = std::min(1.0, cst_.c_samp / static_cast<double>(n_));
            for (ExpertId id : sample_experts(n_, rate, sample_rng_))
                th.pools[0].push_back(store_.admit(id, t));
        }
        recount_refs();
    }
    sync_members(t);
}

void FullObliviousLearner::sync_members(std::uint64_t t) {
    std::set<ExpertId> in_union;
    for (const Thread& th : threads_)
        for (const auto& p : th.pools)
            for (int uid : p) in_union.insert(store_.entry(uid).expert);
    for (ExpertId id : player_.live_members())
        if (!in_union.count(id)) player_.kill(id);
    for (ExpertId id : in_union)
        if (!player_.has_live_member(id)) player_.wake(id, t);
}

ExpertId FullObliviousLearner::act(std::uint64_t day) {
    assert(day == started_ + 1);
    day_start(day);
    started_ = day;
    return player_.propose();
}

void FullObliviousLearner::observe(const DayLoss& loss) {
    store_.observe(loss);
    player_.update(loss);
    day_end(started_);
}

void FullObliviousLearner::day_end(std::uint64_t t) {
    bool changed = false;
    for (int r = 1; r <= sched_.R; ++r) {
        if (!sched_.epoch_end(r, t)) continue;
        Thread& th = threads_[r - 1];
        const std::uint64_t e = th.epoch_in_restart;
        assert(e >= 1);
        const int top = static_cast<int>(
            std::min<std::uint64_t>(pw(e), th.pools.size() - 2));
        for (int l = 0; l <= top; ++l) {
            th.pools[l + 1] =
                merge_pools(store_, th.pools[l + 1], th.pools[l], cst_, merge_rng_);
            th.pools[l].clear();
        }
        changed = true;
    }
    if (changed) recount_refs();
}

std::unique_ptr<Learner> make_grouped_oblivious(const GameConfig& cfg, MemoryMeter* meter,
                                                RandomnessSource rng) {
    const std::uint64_t G =
        cfg.constants.group_count ? cfg.constants.group_count : cfg.space_budget;
    if (G < 1 || G > cfg.n) throw ConfigError("group count must be in [1, n]");
    const auto groups = group_partition(cfg.n, G);
    std::vector<std::unique_ptr<Learner>> subs;
    subs.reserve(groups.size());
    for (std::size_t g = 0; g < groups.size(); ++g) {
        GameConfig sub = cfg;
        sub.n = groups[g].size();
        // A single group must behave exactly like the ungrouped learner, so
        // it inherits this learner's randomness stream unchanged.
        RandomnessSource sub_rng =
            groups.size() == 1 ? rng : rng.fork("g" + std::to_string(g));
        subs.push_back(std::make_unique<ProjectedLearner>(
            groups[g],
            std::make_unique<FullObliviousLearner>(sub, meter, std::move(sub_rng))));
    }
    return std::make_unique<GroupedLearner>(std::move(subs), cfg.T, cfg.n, cfg.T,
                                            rng.fork("top"), meter);
}

}  // namespace expool
