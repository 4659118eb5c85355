#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "expool/config.hpp"
#include "expool/loss.hpp"
#include "expool/rng.hpp"

namespace expool {

// What an adversary is allowed to see when producing day `day`'s losses:
// the committed actions of days 1..day-1, nothing else.  `strategy` is the
// learner's current mixed strategy over [n] and is non-null only under the
// strong model; every other adversary must ignore it.
struct AdversaryContext {
    std::uint64_t day = 0;
    const std::vector<ExpertId>* history = nullptr;
    const std::vector<double>* strategy = nullptr;
};

class Adversary {
public:
    virtual ~Adversary() = default;
    // Called exactly once per day, after the learner commits its action.
    virtual DayLoss losses(const AdversaryContext& ctx) = 0;
};

// Fresh uniform [0,1] loss per (day, expert).
class IidAdversary : public Adversary {
public:
    IidAdversary(std::uint64_t n, RandomnessSource rng) : n_(n), rng_(std::move(rng)) {}
    DayLoss losses(const AdversaryContext&) override;

private:
    std::uint64_t n_;
    RandomnessSource rng_;
};

// Expert 0 always loses (1-gap)/2, everyone else (1+gap)/2; gap 0 makes all
// experts identical.
class PlantedAdversary : public Adversary {
public:
    PlantedAdversary(std::uint64_t n, double gap) : n_(n), gap_(gap) {}
    DayLoss losses(const AdversaryContext&) override;

private:
    std::uint64_t n_;
    double gap_;
};

// Expert 0 is best (loss 1/4) for the first half of the horizon, expert 1
// for the second half; all other cells cost 3/4.
class TwoPhaseAdversary : public Adversary {
public:
    TwoPhaseAdversary(std::uint64_t n, std::uint64_t T) : n_(n), T_(T) {}
    DayLoss losses(const AdversaryContext&) override;

private:
    std::uint64_t n_, T_;
};

// The set-intersection hard instance.  Experts are split into N blocks of
// width M; per block the two hidden bit strings share exactly one coordinate
// (the rest split evenly among (0,0), (1,0), (0,1), forcing M = 1 mod 3).
// Most days are free; with probability eps^2 the day punishes: blocks the
// learner has played earlier in the current epoch cost 1/2 everywhere, and
// untouched blocks cost 1 minus one side's bits, the side chosen by a fair
// coin.  Knowledge of the learner is limited to its played actions.
class DisjointnessAdversary : public Adversary {
public:
    DisjointnessAdversary(std::uint64_t n, double epsilon, RandomnessSource rng);
    DayLoss losses(const AdversaryContext& ctx) override;

    // Width actually used: the divisor of n closest to eps*sqrt(n) among
    // those = 1 mod 3 and >= 4 (ties to the smaller).  Throws when none.
    static std::uint64_t pick_block_width(std::uint64_t n, double epsilon);

    double effective_epsilon() const { return effective_eps_; }
    std::uint64_t block_width() const { return M_; }
    std::uint64_t epoch_len() const { return epoch_len_; }
    // The per-block shared coordinate, as global expert ids.
    const std::vector<ExpertId>& shared_coordinates() const { return shared_; }
    bool side_a_bit(std::uint64_t coord) const { return x_a_[coord]; }
    bool side_b_bit(std::uint64_t coord) const { return x_b_[coord]; }

private:
    std::uint64_t n_, M_, N_, epoch_len_;
    double effective_eps_;
    RandomnessSource rng_;
    std::vector<std::uint8_t> x_a_, x_b_;
    std::vector<ExpertId> shared_;
};

// Strategy-aware heavy-set stream: a fixed special set I of 10*S experts;
// every day the 2S special experts carrying the most strategy mass (ties to
// lower id) cost 1 along with all non-special experts, the other special
// experts cost 0.  Requires the learner's current strategy.
class StrongAdversary : public Adversary {
public:
    StrongAdversary(std::uint64_t n, std::uint64_t budget, RandomnessSource rng);
    DayLoss losses(const AdversaryContext& ctx) override;

    const std::vector<ExpertId>& special() const { return special_; }

private:
    std::uint64_t n_, budget_;
    std::vector<ExpertId> special_;
};

std::unique_ptr<Adversary> make_adversary(const GameConfig& cfg, RandomnessSource rng);

}  // namespace expool
