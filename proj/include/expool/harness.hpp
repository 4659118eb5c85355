#pragma once

#include <memory>
#include <string>
#include <vector>

#include "expool/adversary.hpp"
#include "expool/config.hpp"
#include "expool/learner.hpp"
#include "expool/ledger.hpp"
#include "expool/meter.hpp"

namespace expool {

struct TraceRow {
    std::uint64_t day = 0;
    ExpertId action = kAbstain;
    double alg_loss = 0.0;
    double best_cum = 0.0;
    double regret = 0.0;
    std::size_t mem_words = 0;
};

struct GameTrace {
    GameConfig config;
    std::vector<TraceRow> rows;  // one per day
    double algorithm_cum = 0.0;
    double best_expert_cum = 0.0;
    double final_regret = 0.0;
    std::size_t peak_words = 0;
    std::vector<double> expert_cums;  // final cumulative loss per expert
};

std::unique_ptr<Learner> make_learner(const GameConfig& cfg, MemoryMeter* meter,
                                      RandomnessSource rng);

// Plays one full game.  The day loop owns the commitment order: the learner
// acts, only then does the adversary see the day (and only the action
// history; the strong model additionally gets the current strategy, falling
// back to a point mass on the committed action), and the learner observes
// the losses last.
GameTrace run_game(const GameConfig& cfg);

// day,action,alg_loss,best_cum,regret,mem_words; fixed six decimals, LF line
// endings.  With stride k, every k-th day is emitted plus the final day.
std::string trace_to_csv(const GameTrace& trace, std::uint64_t stride = 1);
void write_trace_csv(const GameTrace& trace, const std::string& path,
                     std::uint64_t stride = 1);

struct SuiteEntry {
    GameConfig config;
    double final_regret = 0.0;
    double algorithm_cum = 0.0;
    double best_expert_cum = 0.0;
    std::size_t peak_words = 0;
};

// One game per configuration; with `parallel` the games run under OpenMP
// (results are positionally identical to the serial path, which is kept as
// the reference).
std::vector<SuiteEntry> run_suite(const std::vector<GameConfig>& configs, bool parallel);

struct SummaryRow {
    GameConfig representative;  // first config of the group (its seed)
    std::size_t games = 0;
    double median_regret = 0.0;
    double p25_regret = 0.0;
    double p75_regret = 0.0;
    double median_avg_regret = 0.0;  // median of final_regret / T
    std::size_t max_peak_words = 0;
};

// Groups suite entries by configuration-minus-seed, in first-seen order.
std::vector<SummaryRow> summarize(const std::vector<SuiteEntry>& entries);

std::string summary_table(const std::vector<SummaryRow>& rows);
std::string summary_to_csv(const std::vector<SummaryRow>& rows);

// Seed sweep helper: copies of `base` with seeds seed, seed+1, ...
std::vector<GameConfig> seed_sweep(const GameConfig& base, std::uint64_t seeds);

}  // namespace expool
