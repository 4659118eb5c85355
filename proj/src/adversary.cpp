#include "expool/adversary.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <set>
#include <stdexcept>

#include "expool/logging.hpp"

namespace expool {

DayLoss IidAdversary::losses(const AdversaryContext&) {
    DayLoss loss;
    loss.values.resize(n_);
    for (std::uint64_t i = 0; i < n_; ++i) loss.values[i] = rng_.uniform();
    return loss;
}

DayLoss PlantedAdversary::losses(const AdversaryContext&) {
    DayLoss loss;
    loss.values.assign(n_, (1.0 + gap_) / 2.0);
    loss.values[0] = (1.0 - gap_) / 2.0;
    return loss;
}

DayLoss TwoPhaseAdversary::losses(const AdversaryContext& ctx) {
    DayLoss loss;
    loss.values.assign(n_, 0.75);
    const ExpertId star = ctx.day <= T_ / 2 ? 0 : 1;
    loss.values[star] = 0.25;
    return loss;
}

std::uint64_t DisjointnessAdversary::pick_block_width(std::uint64_t n, double epsilon) {
    const double target = epsilon * std::sqrt(static_cast<double>(n));
    std::uint64_t best = 0;
    double best_gap = 0.0;
    for (std::uint64_t m = 4; m <= n; ++m) {
        if (n % m != 0 || m % 3 != 1) continue;
        const double gap = std::abs(static_cast<double>(m) - target);
        if (best == 0 || gap < best_gap) {
            best = m;
            best_gap = gap;
        }
    }
    if (best == 0)
        throw ConfigError("no block width divides n with width = 1 mod 3 and >= 4");
    return best;
}

DisjointnessAdversary::DisjointnessAdversary(std::uint64_t n, double epsilon,
                                             RandomnessSource rng)
    : n_(n), M_(pick_block_width(n, epsilon)), rng_(std::move(rng)) {
    N_ = n_ / M_;
    epoch_len_ = std::max<std::uint64_t>(1, N_ / 10);
    effective_eps_ = static_cast<double>(M_) / std::sqrt(static_cast<double>(n_));
    if (std::abs(effective_eps_ - epsilon) > 1e-12)
        log_info("disjointness", "block width rounded; effective epsilon = " +
                                     std::to_string(effective_eps_));
    x_a_.assign(n_, 0);
    x_b_.assign(n_, 0);
    shared_.reserve(N_);
    const std::uint64_t per_type = (M_ - 1) / 3;
    for (std::uint64_t blk = 0; blk < N_; ++blk) {
        const std::uint64_t base = blk * M_;
        const std::uint64_t star = rng_.below(M_);
        shared_.push_back(static_cast<ExpertId>(base + star));
        x_a_[base + star] = 1;
        x_b_[base + star] = 1;
        // The other coordinates: equal thirds of (0,0), (1,0), (0,1), in a
        // uniformly shuffled arrangement.
        std::vector<int> types;
        types.reserve(M_ - 1);
        for (int ty = 0; ty < 3; ++ty)
            for (std::uint64_t c = 0; c < per_type; ++c) types.push_back(ty);
        for (std::size_t i = types.size(); i > 1; --i)
            std::swap(types[i - 1], types[rng_.below(i)]);
        std::size_t pos = 0;
        for (std::uint64_t c = 0; c < M_; ++c) {
            if (c == star) continue;
            const int ty = types[pos++];
            if (ty == 1) x_a_[base + c] = 1;
            if (ty == 2) x_b_[base + c] = 1;
        }
    }
}

DayLoss DisjointnessAdversary::losses(const AdversaryContext& ctx) {
    DayLoss loss;
    loss.values.assign(n_, 0.0);
    // Fixed two draws a day keeps the stream reproducible whatever branch is
    // taken.
    const double day_coin = rng_.uniform();
    const double side_coin = rng_.uniform();
    if (day_coin >= effective_eps_ * effective_eps_) return loss;

    const std::uint64_t epoch_first = (ctx.day - 1) / epoch_len_ * epoch_len_ + 1;
    std::set<std::uint64_t> played;
    for (std::uint64_t t = epoch_first; t < ctx.day; ++t) {
        const ExpertId a = (*ctx.history)[t - 1];
        if (a != kAbstain) played.insert(static_cast<std::uint64_t>(a) / M_);
    }
    const bool side_a = side_coin < 0.5;
    for (std::uint64_t blk = 0; blk < N_; ++blk) {
        const std::uint64_t base = blk * M_;
        if (played.count(blk)) {
            for (std::uint64_t c = 0; c < M_; ++c) loss.values[base + c] = 0.5;
        } else {
            const std::vector<std::uint8_t>& x = side_a ? x_a_ : x_b_;
            for (std::uint64_t c = 0; c < M_; ++c)
                loss.values[base + c] = 1.0 - static_cast<double>(x[base + c]);
        }
    }
    return loss;
}

StrongAdversary::StrongAdversary(std::uint64_t n, std::uint64_t budget,
                                 RandomnessSource rng)
    : n_(n), budget_(budget) {
    if (10 * budget_ > n_)
        throw ConfigError("heavy-set stream needs 10 * space_budget <= n");
    std::vector<ExpertId> ids(n_);
    for (std::uint64_t i = 0; i < n_; ++i) ids[i] = static_cast<ExpertId>(i);
    const std::size_t take = static_cast<std::size_t>(10 * budget_);
    for (std::size_t i = 0; i < take; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(n_ - i));
        std::swap(ids[i], ids[j]);
    }
    special_.assign(ids.begin(), ids.begin() + take);
    std::sort(special_.begin(), special_.end());
}

DayLoss StrongAdversary::losses(const AdversaryContext& ctx) {
    if (ctx.strategy == nullptr)
        throw std::invalid_argument("heavy-set stream needs the learner's strategy");
    const std::vector<double>& p = *ctx.strategy;
    if (p.size() != n_)
        throw std::invalid_argument("strategy dimension mismatch");
    double total = 0.0;
    for (double v : p) {
        if (v < 0.0) throw std::invalid_argument("strategy has negative mass");
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-6)
        throw std::invalid_argument("strategy does not sum to one");

    DayLoss loss;
    loss.values.assign(n_, 1.0);
    // Special experts dodge the unit loss unless they carry top-2S mass.
    std::vector<ExpertId> order = special_;
    std::stable_sort(order.begin(), order.end(), [&p](ExpertId a, ExpertId b) {
        if (p[a] != p[b]) return p[a] > p[b];
        return a < b;
    });
    const std::size_t heavy = std::min<std::size_t>(2 * budget_, order.size());
    for (std::size_t i = heavy; i < order.size(); ++i) loss.values[order[i]] = 0.0;
    return loss;
}

std::unique_ptr<Adversary> make_adversary(const GameConfig& cfg, RandomnessSource rng) {
    switch (cfg.adversary) {
        case AdversaryKind::kIid:
            return std::make_unique<IidAdversary>(cfg.n, std::move(rng));
        case AdversaryKind::kPlanted:
            return std::make_unique<PlantedAdversary>(cfg.n, 0.8);
        case AdversaryKind::kTwoPhase:
            return std::make_unique<TwoPhaseAdversary>(cfg.n, cfg.T);
        case AdversaryKind::kDisjointness:
            return std::make_unique<DisjointnessAdversary>(cfg.n, cfg.epsilon,
                                                           std::move(rng));
        case AdversaryKind::kStrong:
            return std::make_unique<StrongAdversary>(cfg.n, cfg.space_budget,
                                                     std::move(rng));
    }
    throw ConfigError("unknown adversary kind");
}

}  // namespace expool
