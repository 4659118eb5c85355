#include "expool/adaptive.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <set>
#include <stdexcept>

#include "expool/hedger.hpp"
#include "expool/logging.hpp"
#include "expool/pool.hpp"

namespace expool {

AdaptiveSchedule AdaptiveSchedule::make(std::uint64_t n, double epsilon,
                                        const Constants& cst) {
    const std::uint64_t inv = static_cast<std::uint64_t>(std::llround(1.0 / epsilon));
    if (epsilon <= 0.0 || epsilon > 0.5 || !is_power_of_two(inv))
        throw ConfigError("adaptive schedule needs epsilon = 2^-k with k >= 1");
    AdaptiveSchedule s;
    s.epsilon = epsilon;
    s.k = log2_floor(inv);
    s.R = s.k;
    s.B = inv * inv;
    const double root_n = std::sqrt(static_cast<double>(n));
    for (int r = 1; r <= s.R; ++r) {
        const double er = std::ldexp(epsilon, r - 1);
        s.eps_r.push_back(er);
        s.restart_len.push_back(1ULL << (2 * (s.k - r + 1)));
        s.width.push_back(static_cast<std::size_t>(std::max<long long>(
            1, std::llround(cst.c_n * er * er * root_n / epsilon))));
    }
    s.life_epochs = static_cast<std::uint64_t>(
        std::max<long long>(1, std::llround(epsilon * root_n)));
    return s;
}

AdaptiveLearner::AdaptiveLearner(const GameConfig& cfg, MemoryMeter* meter,
                                 RandomnessSource rng)
    : n_(cfg.n),
      T_(cfg.T),
      cst_(cfg.constants),
      sched_(AdaptiveSchedule::make(cfg.n, cfg.epsilon, cfg.constants)),
      grid_(SquintGrid::make(cfg.constants.squint_octaves)),
      rexp_rng_(rng.fork("rexp")),
      watch_rng_(rng.fork("watch")),
      ir_rng_(rng.fork("ir")),
      meter_(meter),
      pools_lease_(meter, "adaptive/pools"),
      grid_lease_(meter, "adaptive/rate-grid"),
      mono_(std::make_unique<MonocarpicExpert>(cfg.T, cfg.n, cfg.T, &grid_,
                                               rng.fork("long"), meter, "adaptive/long")),
      top_(2, cfg.T, cfg.n, cfg.T, &grid_, rng.fork("top"), meter, "adaptive/top") {
    if (cfg.T % sched_.B != 0)
        throw ConfigError("adaptive learner needs 1/epsilon^2 to divide the horizon T");
    rexp_.resize(sched_.R);
    watch_.resize(sched_.R);
    pools_.resize(sched_.R);
    for (int r = 0; r < sched_.R; ++r) {
        rexp_[r].lease = MeterLease(meter, "adaptive/rexp");
        watch_[r].lease = MeterLease(meter, "adaptive/watch");
    }
    grid_lease_.resize(3 * grid_.size());
    rexp_props_.resize(sched_.R);
}

AdaptiveLearner::~AdaptiveLearner() = default;

void AdaptiveLearner::day_start(std::uint64_t t) {
    const double root_n = std::sqrt(static_cast<double>(n_));
    for (int r = 0; r < sched_.R; ++r) {
        const std::uint64_t len = sched_.restart_len[r];
        if ((t - 1) % len != 0) continue;
        // Fresh restart: resample every column's expert set.  Column b is
        // consulted for play only on day b of the restart, so its experts
        // were never played before that day.
        RexpThread& th = rexp_[r];
        ++th.restarts;
        th.realized = 0.0;
        th.columns.assign(len, Column{});
        const std::size_t w = sched_.width[r];
        for (std::uint64_t b = 0; b < len; ++b) {
            Column& c = th.columns[b];
            c.ids.resize(w);
            for (std::size_t s = 0; s < w; ++s)
                c.ids[s] = static_cast<ExpertId>(rexp_rng_.below(n_));
            c.mwu = MwuState(w, mwu_eta(w, static_cast<double>(len), n_, T_));
        }
        th.lease.resize(len * (2 * w + 1) + 1);

        // Fresh watchlist: candidates are observed for the whole restart and
        // never played while under observation.
        Watchlist& wl = watch_[r];
        wl.cum.clear();
        const double rate = std::min(1.0, 1.0 / (sched_.epsilon * root_n));
        for (ExpertId id : sample_experts(n_, rate, watch_rng_)) wl.cum.emplace(id, 0.0);
        wl.lease.resize(2 * wl.cum.size() + 1);
    }
    if ((t - 1) % sched_.B == 0) {
        epoch_ir_.reset();
        ++epoch_ir_births_;
        epoch_ir_ = std::make_unique<IntervalRegret>(
            sched_.R, sched_.B, n_, T_, &grid_,
            ir_rng_.fork("e" + std::to_string(epoch_ir_births_)), meter_,
            "adaptive/epoch-ir");
    }
    sync_long_members(t);
}

void AdaptiveLearner::sync_long_members(std::uint64_t t) {
    std::set<ExpertId> members;
    for (const auto& pool : pools_)
        for (const auto& [id, expiry] : pool) members.insert(id);
    for (ExpertId id : mono_->live_members())
        if (!members.count(id)) mono_->kill(id);
    for (ExpertId id : members)
        if (!mono_->has_live_member(id)) mono_->wake(id, t);
}

ExpertId AdaptiveLearner::act(std::uint64_t day) {
    assert(day == started_ + 1);
    day_start(day);
    started_ = day;
    for (int r = 0; r < sched_.R; ++r) {
        const std::uint64_t b = (day - 1) % sched_.restart_len[r];
        const Column& c = rexp_[r].columns[b];
        rexp_props_[r] = c.ids[mwu_sample(c.mwu, rexp_rng_.uniform())];
    }
    const std::uint64_t local = (day - 1) % sched_.B + 1;
    random_prop_ = rexp_props_[epoch_ir_->propose(local)];
    long_prop_ = mono_->propose();
    const std::size_t branch = top_.propose(day);
    return branch == 0 ? random_prop_ : long_prop_;
}

void AdaptiveLearner::observe(const DayLoss& loss) {
    const std::uint64_t t = started_;
    top_.update({loss.of(random_prop_), loss.of(long_prop_)});

    std::vector<double> thread_losses(sched_.R);
    for (int r = 0; r < sched_.R; ++r) thread_losses[r] = loss.of(rexp_props_[r]);
    epoch_ir_->update(thread_losses);

    std::vector<double> slot_losses;
    for (int r = 0; r < sched_.R; ++r) {
        RexpThread& th = rexp_[r];
        th.realized += thread_losses[r];
        for (Column& c : th.columns) {
            slot_losses.resize(c.ids.size());
            for (std::size_t s = 0; s < c.ids.size(); ++s)
                slot_losses[s] = loss.of(c.ids[s]);
            mwu_update(c.mwu, slot_losses);
        }
    }
    for (Watchlist& wl : watch_)
        for (auto& [id, cum] : wl.cum) cum += loss.of(id);
    mono_->update(loss);
    day_end(t, loss);
}

void AdaptiveLearner::day_end(std::uint64_t t, const DayLoss&) {
    const std::uint64_t epoch = (t - 1) / sched_.B + 1;
    bool pools_changed = false;
    for (int r = 0; r < sched_.R; ++r) {
        if (t % sched_.restart_len[r] != 0) continue;
        // Restart over: candidates clearly ahead of the thread's own record
        // graduate into the long-memory pool.
        const double slack = cst_.c_adm / sched_.eps_r[r];
        for (const auto& [id, cum] : watch_[r].cum) {
            if (cum < rexp_[r].realized - slack) {
                auto [it, fresh] = pools_[r].try_emplace(id, 0);
                it->second = std::max(it->second, epoch + sched_.life_epochs);
                admission_log_.push_back({t, r + 1, id, cum, rexp_[r].realized});
                pools_changed = true;
            }
        }
        watch_[r].cum.clear();
        watch_[r].lease.resize(0);
    }
    if (t % sched_.B == 0) {
        for (auto& pool : pools_)
            for (auto it = pool.begin(); it != pool.end();) {
                if (it->second <= epoch) {
                    it = pool.erase(it);
                    pools_changed = true;
                } else {
                    ++it;
                }
            }
    }
    if (pools_changed) {
        std::size_t words = 0;
        for (const auto& pool : pools_) words += 2 * pool.size();
        pools_lease_.resize(words);
    }
}

std::vector<ExpertId> AdaptiveLearner::pool_members(int r) const {
    std::vector<ExpertId> out;
    for (const auto& [id, expiry] : pools_.at(r - 1)) out.push_back(id);
    return out;
}

std::unique_ptr<Learner> make_grouped_adaptive(const GameConfig& cfg, MemoryMeter* meter,
                                               RandomnessSource rng) {
    const std::uint64_t G =
        cfg.constants.group_count > 0 ? static_cast<std::uint64_t>(cfg.constants.group_count)
                                      : 1;
    if (G < 1 || G > cfg.n) throw ConfigError("group count must be in [1, n]");
    const auto groups = group_partition(cfg.n, G);
    // Each group gets a 1/G share of the budget, so its accuracy target is
    // coarsened by a factor ~sqrt(G), rounded to the next power of two.
    double eps = cfg.epsilon;
    if (G > 1) {
        const int half_levels = (log2_ceil(G) + 1) / 2;
        eps = std::min(0.5, cfg.epsilon * static_cast<double>(1ULL << half_levels));
    }
    std::vector<std::unique_ptr<Learner>> subs;
    subs.reserve(groups.size());
    for (std::size_t g = 0; g < groups.size(); ++g) {
        GameConfig sub = cfg;
        sub.n = groups[g].size();
        sub.epsilon = eps;
        RandomnessSource sub_rng =
            groups.size() == 1 ? rng : rng.fork("g" + std::to_string(g));
        subs.push_back(std::make_unique<ProjectedLearner>(
            groups[g], std::make_unique<AdaptiveLearner>(sub, meter, std::move(sub_rng))));
    }
    return std::make_unique<GroupedLearner>(std::move(subs), cfg.T, cfg.n, cfg.T,
                                            rng.fork("top"), meter);
}

}  // namespace expool
