#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "expool/learner.hpp"
#include "expool/loss.hpp"
#include "expool/meter.hpp"
#include "expool/rng.hpp"

namespace expool {

// ------------------------------------------------------------ multiplicative

// Weights over a fixed set of slots, w(i) proportional to exp(-eta * cum(i)).
// Slots are indices into whatever member list the caller maintains.
struct MwuState {
    double eta = 0.0;
    std::vector<double> cum;  // cumulative loss per slot

    MwuState() = default;
    MwuState(std::size_t slots, double eta_) : eta(eta_), cum(slots, 0.0) {}
    std::size_t size() const { return cum.size(); }
};

// Default learning rate sqrt(ln(m/delta) / horizon) with delta = 1/(nT),
// where m is the support the weights run over and (n, T) the game scale.
double mwu_eta(std::size_t support, double horizon, std::uint64_t n, std::uint64_t T);

// Normalized weight vector (max-shifted before exponentiation).
std::vector<double> mwu_distribution(const MwuState& s);

// Draws a slot from mwu_distribution(s) with the single uniform u.
// u == 0 deterministically returns the slot of minimal cumulative loss
// (ties: lowest slot).
std::size_t mwu_sample(const MwuState& s, double u);

// Adds one day of losses (indexed by slot).
void mwu_update(MwuState& s, const std::vector<double>& losses);

// --------------------------------------------------------------------- squint

// Discretized prior over learning rates for the second-order hedge.  The
// density 1/(eta * ln^2 eta) on [2^-(octaves+1), 1/2] is integrated with a
// two-node Gauss-Legendre rule per octave cell; node masses are normalized
// to sum to one.  The default 20 octaves give a 40-point grid.
struct SquintGrid {
    std::vector<double> eta;       // node positions
    std::vector<double> eta2;      // eta^2, precomputed
    std::vector<double> log_mass_eta;  // ln(mass * eta), the static part of the weight

    static SquintGrid make(int octaves);
    std::size_t size() const { return eta.size(); }
    // E[eta] under the grid; the weight every fresh accumulator starts from.
    double fresh_weight() const;
};

// Running first and second moments of a slot's instantaneous regret
// v_t = <p_t, l_t> - l_t(i).
struct SquintAccumulator {
    double sum_v = 0.0;
    double sum_v2 = 0.0;

    void add(double v) {
        sum_v += v;
        sum_v2 += v * v;
    }
};

// ln E_eta[eta * exp(eta * sum_v - eta^2 * sum_v2)] under the grid prior.
// Log-domain so far-behind slots underflow gracefully.
double squint_log_weight(const SquintGrid& grid, const SquintAccumulator& acc);

// ------------------------------------------------------------ plain learners

// Full-memory multiplicative weights over all n experts.
class MwuLearner : public Learner {
public:
    MwuLearner(std::uint64_t n, std::uint64_t horizon, RandomnessSource rng, MemoryMeter* meter);
    ~MwuLearner() override { lease_.release(); }

    ExpertId act(std::uint64_t day) override;
    void observe(const DayLoss& loss) override;
    const std::vector<double>* strategy() const override { return &today_; }

private:
    MwuState state_;
    RandomnessSource rng_;
    MeterLease lease_;
    std::vector<double> today_;  // day-scratch, rebuilt every act()
};

// Full-memory second-order hedge over all n experts: weights from the
// learning-rate mixture above, one accumulator pair per expert.
class SquintHedgeLearner : public Learner {
public:
    SquintHedgeLearner(std::uint64_t n, int octaves, RandomnessSource rng, MemoryMeter* meter);
    ~SquintHedgeLearner() override { lease_.release(); }

    ExpertId act(std::uint64_t day) override;
    void observe(const DayLoss& loss) override;
    const std::vector<double>* strategy() const override { return &today_; }

private:
    SquintGrid grid_;
    std::vector<SquintAccumulator> acc_;
    RandomnessSource rng_;
    MeterLease lease_;
    std::vector<double> today_;
};

// Always plays one fixed expert; useful as a trivial sub-learner.
class FixedLearner : public Learner {
public:
    explicit FixedLearner(ExpertId id) : id_(id) {}
    ExpertId act(std::uint64_t) override { return id_; }
    void observe(const DayLoss&) override {}

private:
    ExpertId id_;
};

// Balanced partition of 0..n-1 into G contiguous groups (sizes differ by
// at most one).
std::vector<std::vector<ExpertId>> group_partition(std::uint64_t n, std::uint64_t groups);

// Runs one sub-learner per expert group and hedges over them with a top-level
// MWU: each day every group proposes, the top weights pick a group, and the
// group's proposal is played.  Every group observes the full loss vector; the
// top weights are updated with each group's realized proposal loss.
// With a single group this is a structural pass-through: no top weights, no
// extra randomness, byte-identical behavior to the bare sub-learner.
class GroupedLearner : public Learner {
public:
    GroupedLearner(std::vector<std::unique_ptr<Learner>> subs, std::uint64_t horizon,
                   std::uint64_t n, std::uint64_t T, RandomnessSource rng, MemoryMeter* meter);
    ~GroupedLearner() override { lease_.release(); }

    ExpertId act(std::uint64_t day) override;
    void observe(const DayLoss& loss) override;

private:
    std::vector<std::unique_ptr<Learner>> subs_;
    MwuState top_;
    RandomnessSource rng_;
    MeterLease lease_;
    std::vector<ExpertId> proposals_;  // day-scratch
};

// Adapts a learner built for a private index space 0..|ids|-1 to the global
// expert ids `ids`: losses are projected onto the group, actions mapped back.
// Abstention passes through unchanged.
class ProjectedLearner : public Learner {
public:
    ProjectedLearner(std::vector<ExpertId> ids, std::unique_ptr<Learner> inner)
        : ids_(std::move(ids)), inner_(std::move(inner)) {}

    ExpertId act(std::uint64_t day) override {
        const ExpertId local = inner_->act(day);
        return local == kAbstain ? kAbstain : ids_.at(local);
    }
    void observe(const DayLoss& loss) override {
        DayLoss local;
        local.values.resize(ids_.size());
        for (std::size_t i = 0; i < ids_.size(); ++i) local.values[i] = loss.of(ids_[i]);
        inner_->observe(local);
    }

private:
    std::vector<ExpertId> ids_;
    std::unique_ptr<Learner> inner_;
};

}  // namespace expool
