#include "expool/pool.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <stdexcept>
#include <utility>

#include "expool/logging.hpp"

namespace expool {

EntryStore::EntryStore(MemoryMeter* meter, std::string label)
    : lease_(meter, std::move(label)) {}

int EntryStore::admit(ExpertId expert, std::uint64_t day) {
    for (PoolEntry& e : entries_)
        if (e.live) e.snaps.emplace(day, e.cum);
    const int uid = static_cast<int>(entries_.size());
    PoolEntry e;
    e.uid = uid;
    e.expert = expert;
    e.entry_day = day;
    e.live = true;
    entries_.push_back(std::move(e));
    ++live_count_;
    recharge();
    return uid;
}

void EntryStore::remove(int uid) {
    PoolEntry& e = entries_.at(uid);
    if (!e.live) throw std::logic_error("EntryStore::remove: entry already gone");
    e.live = false;
    e.snaps.clear();
    --live_count_;
    recharge();
}

void EntryStore::observe(const DayLoss& loss) {
    for (PoolEntry& e : entries_)
        if (e.live) e.cum += loss.of(e.expert);
}

void EntryStore::prune_snapshots() {
    std::set<std::uint64_t> starts;
    for (const PoolEntry& e : entries_)
        if (e.live) starts.insert(e.entry_day);
    for (PoolEntry& e : entries_) {
        if (!e.live) continue;
        for (auto it = e.snaps.begin(); it != e.snaps.end();)
            it = starts.count(it->first) ? std::next(it) : e.snaps.erase(it);
    }
    recharge();
}

bool EntryStore::is_live(int uid) const {
    return uid >= 0 && uid < static_cast<int>(entries_.size()) && entries_[uid].live;
}

std::vector<int> EntryStore::live_uids() const {
    std::vector<int> out;
    out.reserve(live_count_);
    for (const PoolEntry& e : entries_)
        if (e.live) out.push_back(e.uid);
    return out;
}

double EntryStore::span_loss(int uid, std::uint64_t from, std::uint64_t to) const {
    const PoolEntry& e = entries_.at(uid);
    assert(e.live);
    if (to != kNowDay && to <= from) return kInf;  // nothing to measure
    if (from < e.entry_day) return kInf;           // entered too late to see it
    double at_from = 0.0;
    if (from != e.entry_day) {
        auto it = e.snaps.find(from);
        if (it == e.snaps.end())
            throw std::logic_error("EntryStore::span_loss: no snapshot at `from`");
        at_from = it->second;
    }
    double at_to;
    if (to == kNowDay) {
        at_to = e.cum;
    } else {
        auto it = e.snaps.find(to);
        if (it == e.snaps.end())
            throw std::logic_error("EntryStore::span_loss: no snapshot at `to`");
        at_to = it->second;
    }
    return at_to - at_from;
}

void EntryStore::recharge() {
    // Per live entry: expert id, entry day, running loss, plus two scalars
    // (day, frozen value) per retained snapshot cell.
    std::size_t words = 0;
    for (const PoolEntry& e : entries_)
        if (e.live) words += 3 + 2 * e.snaps.size();
    lease_.resize(words);
}

double covering_benchmark(const EntryStore& store, const std::vector<int>& family,
                          int target_uid) {
    if (family.empty()) return kInf;
    const PoolEntry& target = store.entry(target_uid);
    auto order_key = [&store](int uid) {
        const PoolEntry& e = store.entry(uid);
        return std::make_pair(e.entry_day, e.uid);
    };
    std::vector<int> fam = family;
    std::sort(fam.begin(), fam.end(),
              [&](int a, int b) { return order_key(a) < order_key(b); });
    const auto target_key = std::make_pair(target.entry_day, target.uid);
    std::size_t rank = 0;
    while (rank < fam.size() && order_key(fam[rank]) <= target_key) ++rank;

    // Segment boundaries: the target's own entry day, then the entry day of
    // every family member ranked after it; the last segment runs to today.
    std::vector<std::uint64_t> bounds;
    bounds.push_back(target.entry_day);
    for (std::size_t s = rank; s < fam.size(); ++s)
        bounds.push_back(store.entry(fam[s]).entry_day);

    double total = 0.0;
    for (std::size_t i = 0; i < bounds.size(); ++i) {
        const std::uint64_t a = bounds[i];
        const std::uint64_t b = (i + 1 < bounds.size()) ? bounds[i + 1] : kNowDay;
        if (b != kNowDay && b <= a) continue;  // zero days between equal boundaries
        double best = kInf;
        for (int f : fam)
            if (store.entry(f).entry_day <= a)
                best = std::min(best, store.span_loss(f, a, b));
        if (best == kInf) return kInf;  // nobody in the family saw these days
        total += best;
    }
    return total;
}

bool is_covered(const EntryStore& store, const std::vector<int>& family, int target_uid) {
    const double bench = covering_benchmark(store, family, target_uid);
    if (bench == kInf) return false;
    return store.entry(target_uid).cum >= bench - 1.0;
}

double estimate_size(const std::vector<int>& pool, double rate, RandomnessSource& rng) {
    assert(rate > 0.0 && rate <= 1.0);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < pool.size(); ++i)
        if (rng.bernoulli(rate)) ++hits;
    return static_cast<double>(hits) / rate;
}

std::vector<int> sample_uids(const std::vector<int>& pool, double rate,
                             RandomnessSource& rng) {
    std::vector<int> out;
    for (int uid : pool)
        if (rng.bernoulli(rate)) out.push_back(uid);
    return out;
}

std::vector<ExpertId> sample_experts(std::uint64_t n, double rate, RandomnessSource& rng) {
    std::vector<ExpertId> out;
    for (std::uint64_t i = 0; i < n; ++i)
        if (rng.bernoulli(rate)) out.push_back(static_cast<ExpertId>(i));
    return out;
}

std::vector<int> filter_covered(EntryStore& store, const std::vector<int>& family,
                                std::vector<int> pool) {
    std::vector<int> kept, dropped;
    kept.reserve(pool.size());
    for (int uid : pool) {
        const bool in_family =
            std::find(family.begin(), family.end(), uid) != family.end();
        if (in_family || !is_covered(store, family, uid))
            kept.push_back(uid);
        else
            dropped.push_back(uid);
    }
    for (int uid : dropped) store.remove(uid);
    return kept;
}

std::vector<int> merge_pools(EntryStore& store, const std::vector<int>& a,
                             const std::vector<int>& b, const Constants& cst,
                             RandomnessSource& rng) {
    std::vector<int> q = a;
    q.insert(q.end(), b.begin(), b.end());
    std::sort(q.begin(), q.end());
    q.erase(std::unique(q.begin(), q.end()), q.end());
    for (int k = 0; k < cst.k_iters; ++k) {
        if (estimate_size(q, cst.p_sample, rng) <= cst.size_threshold) break;
        const std::vector<int> fam = sample_uids(q, cst.p_sample, rng);
        q = filter_covered(store, fam, std::move(q));
    }
    store.prune_snapshots();
    return q;
}

BaselineLearner::BaselineLearner(const GameConfig& cfg, MemoryMeter* meter,
                                 RandomnessSource rng)
    : n_(cfg.n),
      T_(cfg.T),
      block_(cfg.baseline_block_len()),
      cst_(cfg.constants),
      store_(meter, "baseline/entries"),
      sample_rng_(rng.fork("sample")),
      merge_rng_(rng.fork("merge")),
      act_rng_(rng.fork("act")),
      refs_lease_(meter, "baseline/pool-refs"),
      mwu_lease_(meter, "baseline/weights") {
    const std::uint64_t epochs = std::max<std::uint64_t>(1, T_ / block_);
    subpools_.resize(static_cast<std::size_t>(log2_ceil(epochs)) + 2);
}

void BaselineLearner::start_epoch(std::uint64_t day) {
    const double rate = std::min(1.0, cst_.c_samp / static_cast<double>(n_));
    for (ExpertId id : sample_experts(n_, rate, sample_rng_))
        subpools_[0].push_back(store_.admit(id, day));
    slots_ = store_.live_uids();
    mwu_ = MwuState(slots_.size(),
                    slots_.empty() ? 0.0 : mwu_eta(slots_.size(), block_, n_, T_));
    std::size_t refs = 0;
    for (const auto& sp : subpools_) refs += sp.size();
    refs_lease_.resize(refs);
    mwu_lease_.resize(slots_.empty() ? 0 : slots_.size() + 1);
    if (slots_.empty())
        log_info("baseline", "pool empty at epoch start; abstaining for the block");
}

ExpertId BaselineLearner::act(std::uint64_t day) {
    if ((day - 1) % block_ == 0) start_epoch(day);
    if (slots_.empty()) return kAbstain;
    const std::size_t s = mwu_sample(mwu_, act_rng_.uniform());
    return store_.entry(slots_[s]).expert;
}

void BaselineLearner::observe(const DayLoss& loss) {
    store_.observe(loss);
    if (!slots_.empty()) {
        std::vector<double> sl(slots_.size());
        for (std::size_t s = 0; s < slots_.size(); ++s)
            sl[s] = loss.of(store_.entry(slots_[s]).expert);
        mwu_update(mwu_, sl);
    }
    ++day_;
    if (day_ % block_ == 0) end_epoch();
}

void BaselineLearner::end_epoch() {
    const std::uint64_t e = day_ / block_;
    const int top = static_cast<int>(
        std::min<std::uint64_t>(pw(e), subpools_.size() - 2));
    for (int l = 0; l <= top; ++l) {
        subpools_[l + 1] =
            merge_pools(store_, subpools_[l + 1], subpools_[l], cst_, merge_rng_);
        subpools_[l].clear();
    }
    std::size_t refs = 0;
    for (const auto& sp : subpools_) refs += sp.size();
    refs_lease_.resize(refs);
}

}  // namespace expool
