#include "expool/hedger.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

#include "expool/logging.hpp"

namespace expool {

double mwu_eta(std::size_t support, double horizon, std::uint64_t n, std::uint64_t T) {
    assert(support >= 1 && horizon >= 1.0);
    const double delta = 1.0 / (static_cast<double>(n) * static_cast<double>(T));
    return std::sqrt(std::log(static_cast<double>(support) / delta) / horizon);
}

std::vector<double> mwu_distribution(const MwuState& s) {
    assert(!s.cum.empty());
    const double cmin = *std::min_element(s.cum.begin(), s.cum.end());
    std::vector<double> p(s.cum.size());
    double total = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        p[i] = std::exp(-s.eta * (s.cum[i] - cmin));  // max weight becomes exactly 1
        total += p[i];
    }
    for (double& v : p) v /= total;
    return p;
}

std::size_t mwu_sample(const MwuState& s, double u) {
    return sample_index(mwu_distribution(s), u);
}

void mwu_update(MwuState& s, const std::vector<double>& losses) {
    assert(losses.size() == s.cum.size());
    for (std::size_t i = 0; i < s.cum.size(); ++i) s.cum[i] += losses[i];
}

// --------------------------------------------------------------------- squint

SquintGrid SquintGrid::make(int octaves) {
    assert(octaves >= 1);
    SquintGrid g;
    const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
    std::vector<double> mass;
    for (int j = 1; j <= octaves; ++j) {
        const double lo = std::ldexp(1.0, -j - 1);
        const double hi = std::ldexp(1.0, -j);
        const double mid = 0.5 * (lo + hi);
        const double hw = 0.5 * (hi - lo);
        for (int node = 0; node < 2; ++node) {
            const double x = node == 0 ? mid - hw * inv_sqrt3 : mid + hw * inv_sqrt3;
            const double lnx = std::log(x);
            const double density = 1.0 / (x * lnx * lnx);
            g.eta.push_back(x);
            mass.push_back(hw * density);  // two-node rule: both weights equal hw
        }
    }
    double total = 0.0;
    for (double m : mass) total += m;
    g.eta2.resize(g.eta.size());
    g.log_mass_eta.resize(g.eta.size());
    for (std::size_t k = 0; k < g.eta.size(); ++k) {
        g.eta2[k] = g.eta[k] * g.eta[k];
        g.log_mass_eta[k] = std::log(mass[k] / total * g.eta[k]);
    }
    return g;
}

double SquintGrid::fresh_weight() const {
    double w = 0.0;
    for (double lme : log_mass_eta) w += std::exp(lme);
    return w;
}

double squint_log_weight(const SquintGrid& grid, const SquintAccumulator& acc) {
    double best = -std::numeric_limits<double>::infinity();
    const std::size_t k = grid.size();
    for (std::size_t i = 0; i < k; ++i) {
        const double x = grid.log_mass_eta[i] + grid.eta[i] * acc.sum_v - grid.eta2[i] * acc.sum_v2;
        if (x > best) best = x;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double x = grid.log_mass_eta[i] + grid.eta[i] * acc.sum_v - grid.eta2[i] * acc.sum_v2;
        s += std::exp(x - best);
    }
    return best + std::log(s);
}

// ------------------------------------------------------------ plain learners

MwuLearner::MwuLearner(std::uint64_t n, std::uint64_t horizon, RandomnessSource rng,
                       MemoryMeter* meter)
    : state_(n, mwu_eta(n, static_cast<double>(horizon), n, horizon)),
      rng_(rng),
      lease_(meter, "mwu") {
    lease_.resize(n + 1);  // cumulative losses plus the learning rate
}

ExpertId MwuLearner::act(std::uint64_t) {
    today_ = mwu_distribution(state_);
    return static_cast<ExpertId>(sample_index(today_, rng_.uniform()));
}

void MwuLearner::observe(const DayLoss& loss) {
    mwu_update(state_, loss.values);
}

SquintHedgeLearner::SquintHedgeLearner(std::uint64_t n, int octaves, RandomnessSource rng,
                                       MemoryMeter* meter)
    : grid_(SquintGrid::make(octaves)), acc_(n), rng_(rng), lease_(meter, "squint-hedge") {
    lease_.resize(2 * n + grid_.size());  // per-expert moment pair plus the shared grid
}

ExpertId SquintHedgeLearner::act(std::uint64_t) {
    std::vector<double> lw(acc_.size());
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < acc_.size(); ++i) {
        lw[i] = squint_log_weight(grid_, acc_[i]);
        best = std::max(best, lw[i]);
    }
    today_.assign(acc_.size(), 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < acc_.size(); ++i) {
        today_[i] = std::exp(lw[i] - best);
        total += today_[i];
    }
    for (double& v : today_) v /= total;
    return static_cast<ExpertId>(sample_index(today_, rng_.uniform()));
}

void SquintHedgeLearner::observe(const DayLoss& loss) {
    assert(loss.size() == acc_.size());
    double mean = 0.0;
    for (std::size_t i = 0; i < acc_.size(); ++i) mean += today_[i] * loss.values[i];
    for (std::size_t i = 0; i < acc_.size(); ++i) acc_[i].add(mean - loss.values[i]);
}

// ------------------------------------------------------------------- grouping

std::vector<std::vector<ExpertId>> group_partition(std::uint64_t n, std::uint64_t groups) {
    assert(groups >= 1 && groups <= n);
    std::vector<std::vector<ExpertId>> out(groups);
    for (std::uint64_t g = 0; g < groups; ++g) {
        const std::uint64_t lo = g * n / groups;
        const std::uint64_t hi = (g + 1) * n / groups;
        for (std::uint64_t i = lo; i < hi; ++i) out[g].push_back(static_cast<ExpertId>(i));
    }
    return out;
}

GroupedLearner::GroupedLearner(std::vector<std::unique_ptr<Learner>> subs, std::uint64_t horizon,
                               std::uint64_t n, std::uint64_t T, RandomnessSource rng,
                               MemoryMeter* meter)
    : subs_(std::move(subs)), rng_(rng), lease_(meter, "grouped-top") {
    assert(!subs_.empty());
    if (subs_.size() > 1) {
        top_ = MwuState(subs_.size(), mwu_eta(subs_.size(), static_cast<double>(horizon), n, T));
        lease_.resize(subs_.size() + 1);
    }
}

ExpertId GroupedLearner::act(std::uint64_t day) {
    if (subs_.size() == 1) return subs_[0]->act(day);  // pass-through, no extra randomness
    proposals_.resize(subs_.size());
    for (std::size_t g = 0; g < subs_.size(); ++g) proposals_[g] = subs_[g]->act(day);
    const std::size_t pick = mwu_sample(top_, rng_.uniform());
    return proposals_[pick];
}

void GroupedLearner::observe(const DayLoss& loss) {
    if (subs_.size() == 1) {
        subs_[0]->observe(loss);
        return;
    }
    std::vector<double> meta(subs_.size());
    for (std::size_t g = 0; g < subs_.size(); ++g) meta[g] = loss.of(proposals_[g]);
    mwu_update(top_, meta);
    for (auto& s : subs_) s->observe(loss);
}

}  // namespace expool
