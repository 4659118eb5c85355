#include "expool/interval.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "expool/config.hpp"
#include "expool/logging.hpp"

namespace expool {

int block_levels(std::uint64_t horizon) {
    assert(horizon >= 1);
    return std::max(1, log2_ceil(horizon));
}

std::vector<DyadicBlock> effective_blocks(std::uint64_t t, std::uint64_t horizon) {
    assert(t >= 1 && t <= horizon);
    const int levels = block_levels(horizon);
    std::vector<DyadicBlock> out;
    out.reserve(levels);
    for (int a = 0; a < levels; ++a)
        out.push_back({a, ((t - 1) >> a) + 1});
    return out;
}

std::vector<DyadicBlock> dyadic_decompose(std::uint64_t t1, std::uint64_t t2,
                                          std::uint64_t horizon) {
    if (t1 < 1 || t1 > t2 || t2 > horizon)
        throw std::invalid_argument("dyadic_decompose: need 1 <= t1 <= t2 <= horizon");
    std::vector<DyadicBlock> out;
    std::uint64_t t = t1;
    while (t <= t2) {
        // Largest block starting at t: limited by alignment of t-1 and by the
        // remaining length.
        const int align = (t == 1) ? 63 : std::countr_zero(t - 1);
        const std::uint64_t len = t2 - t + 1;
        const int fit = 63 - std::countl_zero(len);
        const int a = std::min(align, fit);
        out.push_back({a, ((t - 1) >> a) + 1});
        t += 1ULL << a;
    }
    return out;
}

IntervalRegret::IntervalRegret(std::size_t members, std::uint64_t horizon, std::uint64_t n,
                               std::uint64_t T, const SquintGrid* grid, RandomnessSource rng,
                               MemoryMeter* meter, const char* meter_label)
    : members_(members), horizon_(horizon), grid_(grid), rng_(std::move(rng)) {
    if (members == 0)
        throw std::invalid_argument("IntervalRegret: needs at least one member");
    const int levels = block_levels(horizon);
    levels_.reserve(levels);
    for (int a = 0; a < levels; ++a) {
        Level lv;
        // A level-a block lasts 2^a days; its weights use that as horizon.
        lv.mwu = MwuState(members, mwu_eta(members, 1ULL << a, n, T));
        lv.block_start = 0;  // no block live yet
        levels_.push_back(std::move(lv));
    }
    lease_ = MeterLease(meter, meter_label);
    // Per level: two running sums plus one cumulative loss per member slot.
    lease_.add(static_cast<std::size_t>(levels) * (members_ + 2));
    proposals_.resize(levels);
    block_p_.resize(levels);
}

std::size_t IntervalRegret::propose(std::uint64_t tau) {
    assert(tau >= 1 && tau <= horizon_);
    std::vector<double> log_w(levels_.size());
    for (std::size_t a = 0; a < levels_.size(); ++a) {
        Level& lv = levels_[a];
        const std::uint64_t start = (((tau - 1) >> a) << a) + 1;
        if (lv.block_start != start) {
            // A new block at this level: fresh second-order state and fresh
            // member weights.
            lv.acc = SquintAccumulator{};
            std::fill(lv.mwu.cum.begin(), lv.mwu.cum.end(), 0.0);
            lv.block_start = start;
        }
        proposals_[a] = mwu_sample(lv.mwu, rng_.uniform());
        log_w[a] = squint_log_weight(*grid_, lv.acc);
    }
    // Normalize the block weights with the usual max-shift.
    double hi = -std::numeric_limits<double>::infinity();
    for (double lw : log_w) hi = std::max(hi, lw);
    double total = 0.0;
    for (std::size_t a = 0; a < levels_.size(); ++a) {
        block_p_[a] = std::exp(log_w[a] - hi);
        total += block_p_[a];
    }
    if (!(total > 0.0) || !std::isfinite(total)) {
        log_warn("interval", "block weights degenerate; falling back to uniform");
        std::fill(block_p_.begin(), block_p_.end(), 1.0 / static_cast<double>(block_p_.size()));
    } else {
        for (double& p : block_p_) p /= total;
    }
    const std::size_t pick = sample_index(block_p_, rng_.uniform());
    return proposals_[pick];
}

void IntervalRegret::update(const std::vector<double>& slot_losses) {
    assert(slot_losses.size() == members_);
    // Imputed mixture loss: what the block mixture expected to pay today.
    double bar = 0.0;
    for (std::size_t a = 0; a < levels_.size(); ++a)
        bar += block_p_[a] * slot_losses[proposals_[a]];
    last_bar_ = bar;
    for (std::size_t a = 0; a < levels_.size(); ++a) {
        Level& lv = levels_[a];
        lv.acc.add(bar - slot_losses[proposals_[a]]);
        mwu_update(lv.mwu, slot_losses);
    }
}

}  // namespace expool
