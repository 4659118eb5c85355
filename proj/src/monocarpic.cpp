#include "expool/monocarpic.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "expool/logging.hpp"

namespace expool {

namespace {
constexpr std::size_t kWordsPerMember = 5;  // id, birth, flags, bucket slot, index
}

MonocarpicExpert::MonocarpicExpert(std::uint64_t horizon, std::uint64_t n, std::uint64_t T,
                                   const SquintGrid* grid, RandomnessSource rng,
                                   MemoryMeter* meter, std::string meter_label)
    : horizon_(horizon),
      n_(n),
      T_(T),
      grid_(grid),
      rng_(std::move(rng)),
      meter_(meter),
      label_(std::move(meter_label)),
      buckets_(block_levels(horizon)),
      top_(buckets_.size(), horizon, n, T, grid, rng_.fork("top"), meter,
           "monocarpic/top"),
      lease_(meter, label_ + "/members") {
    proposals_.resize(buckets_.size());
    proposal_slots_.resize(buckets_.size());
    meta_losses_.resize(buckets_.size());
}

MonocarpicExpert::~MonocarpicExpert() {
    for (Bucket& b : buckets_) b.inner.reset();
    lease_.release();
}

void MonocarpicExpert::wake(ExpertId expert, std::uint64_t day) {
    if (proposed_)
        throw std::logic_error("monocarpic: wake must precede the day's propose");
    for (const Member& m : registry_) {
        if (!m.present) continue;
        if (m.expert == expert && m.alive)
            throw std::logic_error("monocarpic: expert already has a live member");
        if (m.expert == expert && m.birth == day)
            throw std::logic_error("monocarpic: dead member cannot be re-admitted");
    }
    std::size_t idx;
    if (!free_slots_.empty()) {
        idx = free_slots_.back();
        free_slots_.pop_back();
    } else {
        idx = registry_.size();
        registry_.emplace_back();
    }
    registry_[idx] = Member{expert, day, true, true};
    buckets_[0].members.push_back(idx);
    ++present_count_;
    ++live_count_;
    lease_.add(kWordsPerMember);
}

void MonocarpicExpert::kill(ExpertId expert) {
    for (Member& m : registry_) {
        if (m.present && m.alive && m.expert == expert) {
            m.alive = false;
            --live_count_;
            return;
        }
    }
    throw std::logic_error("monocarpic: no live member for expert");
}

bool MonocarpicExpert::has_live_member(ExpertId expert) const {
    for (const Member& m : registry_)
        if (m.present && m.alive && m.expert == expert) return true;
    return false;
}

std::vector<ExpertId> MonocarpicExpert::live_members() const {
    std::vector<ExpertId> out;
    out.reserve(live_count_);
    for (const Member& m : registry_)
        if (m.present && m.alive) out.push_back(m.expert);
    std::sort(out.begin(), out.end());
    return out;
}

void MonocarpicExpert::rebuild_bucket(std::size_t bi, std::uint64_t period) {
    Bucket& b = buckets_[bi];
    b.inner.reset();  // release the old lease before the new one is charged
    if (b.members.empty()) return;
    ++b.restarts;
    const std::string tag =
        "b" + std::to_string(bi + 1) + "/r" + std::to_string(b.restarts);
    b.inner = std::make_unique<IntervalRegret>(b.members.size(), period, n_, T_, grid_,
                                               rng_.fork(tag), meter_, "monocarpic/bucket");
}

double MonocarpicExpert::member_loss(std::size_t idx, const DayLoss& loss) const {
    const Member& m = registry_[idx];
    return m.alive ? loss.of(m.expert) : 1.0;
}

ExpertId MonocarpicExpert::propose() {
    assert(!proposed_);
    const std::uint64_t tau = days_done_ + 1;
    for (std::size_t bi = 0; bi < buckets_.size(); ++bi) {
        const std::uint64_t period = 1ULL << bi;
        if ((tau - 1) % period == 0) rebuild_bucket(bi, period);
        Bucket& b = buckets_[bi];
        if (b.inner) {
            const std::uint64_t local = (tau - 1) % period + 1;
            const std::size_t slot = b.inner->propose(local);
            proposal_slots_[bi] = b.members[slot];
            proposals_[bi] = registry_[b.members[slot]].expert;
        } else {
            proposal_slots_[bi] = registry_.size();  // sentinel
            proposals_[bi] = kAbstain;
        }
    }
    const std::size_t pick = top_.propose(tau);
    proposed_ = true;
    if (live_count_ == 0) {
        log_info("monocarpic", "no live members; abstaining");
        return kAbstain;
    }
    ExpertId play = proposals_[pick];
    if (play == kAbstain) {
        // The meta-layer picked an empty bucket (it is charged a unit loss
        // for that); the day's action falls back to the lowest occupied
        // bucket so a live member is always played when one exists.
        for (std::size_t bi = 0; bi < buckets_.size(); ++bi) {
            if (buckets_[bi].inner) {
                play = proposals_[bi];
                break;
            }
        }
    }
    return play;
}

void MonocarpicExpert::update(const DayLoss& loss) {
    assert(proposed_);
    const std::uint64_t tau = days_done_ + 1;
    std::vector<double> slot_losses;
    for (std::size_t bi = 0; bi < buckets_.size(); ++bi) {
        Bucket& b = buckets_[bi];
        if (b.inner) {
            slot_losses.resize(b.members.size());
            for (std::size_t s = 0; s < b.members.size(); ++s)
                slot_losses[s] = member_loss(b.members[s], loss);
            b.inner->update(slot_losses);
            meta_losses_[bi] = proposal_slots_[bi] < registry_.size()
                                   ? member_loss(proposal_slots_[bi], loss)
                                   : 1.0;
        } else {
            meta_losses_[bi] = 1.0;  // an empty bucket abstains
        }
    }
    top_.update(meta_losses_);

    // End-of-day folds: bucket l empties into bucket l+1 for every l up to
    // pw(tau); the cascade can carry a member several rungs at once.  Dead
    // members are dropped from the receiving bucket.
    const int top_fold = static_cast<int>(std::min<std::uint64_t>(
        pw(tau), buckets_.size() - 1));
    for (int l = 1; l <= top_fold; ++l) {
        Bucket& src = buckets_[l - 1];
        Bucket& dst = buckets_[l];
        dst.members.insert(dst.members.end(), src.members.begin(), src.members.end());
        src.members.clear();
        std::vector<std::size_t> kept;
        kept.reserve(dst.members.size());
        for (std::size_t idx : dst.members) {
            if (registry_[idx].alive) {
                kept.push_back(idx);
            } else {
                registry_[idx].present = false;
                free_slots_.push_back(idx);
                --present_count_;
                lease_.resize(lease_.words() - kWordsPerMember);
            }
        }
        dst.members = std::move(kept);
    }
    ++days_done_;
    proposed_ = false;
}

std::vector<ExpertId> MonocarpicExpert::bucket_members(int l) const {
    std::vector<ExpertId> out;
    for (std::size_t idx : buckets_[l - 1].members) out.push_back(registry_[idx].expert);
    return out;
}

}  // namespace expool
