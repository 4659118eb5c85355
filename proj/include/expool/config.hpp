#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace expool {

enum class Algo {
    kMwu,
    kSquintHedge,
    kBaseline,
    kObliviousFull,
    kGroupedOblivious,
    kAdaptive,
    kGroupedAdaptive,
};

enum class AdversaryKind {
    kIid,
    kPlanted,
    kTwoPhase,
    kDisjointness,
    kStrong,
};

enum class Mode { kDesk, kPaper };

// Raised on invalid configuration; the CLI maps it to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Tunable constants.  Desk mode uses small fixed values so the machinery is
// exercised at laptop scale; paper mode uses the polylog formulas (clamped
// into sane ranges where they would exceed the instance).
struct Constants {
    // Pool maintenance.
    double p_sample = 0.25;       // Bernoulli rate inside merge's estimate/sample steps
    double size_threshold = 8.0;  // merge stops shrinking below this estimated size
    double pool_cap = 24.0;       // advertised bound on a sub-pool after merge
    int k_iters = 16;             // max shrink iterations per merge
    double c_samp = 8.0;          // new-expert sampling rate multiplier (c_samp / n per epoch)
    // Adaptive learner.
    double c_n = 4.0;    // Rexp sample-width multiplier
    double c_adm = 2.0;  // pool admission slack multiplier
    // Oblivious learner.
    int r_max = 6;  // cap on the number of threads
    // Hedging.
    int squint_octaves = 20;  // octave cells in the Squint learning-rate grid (2 nodes each)
    // Baseline epoch length; 0 = pick the largest power of two <= sqrt(T).
    std::uint64_t block_len = 0;
    // Group count for the grouped learners; 0 = derive from the space budget.
    int group_count = 0;

    static Constants for_mode(Mode mode, std::uint64_t n, std::uint64_t T);
};

struct GameConfig {
    Algo algo = Algo::kMwu;
    AdversaryKind adversary = AdversaryKind::kIid;
    std::uint64_t n = 8;
    std::uint64_t T = 64;
    double epsilon = 0.25;        // adaptive learners and the epoch-structured stream
    std::uint64_t space_budget = 8;  // S: group budgets, strong adversary's special-set scale
    std::uint64_t seed = 1;
    Mode mode = Mode::kDesk;
    Constants constants = {};

    // Throws ConfigError when the (algo, adversary, parameter) combination is
    // invalid; the CLI turns that into exit code 2.
    void validate() const;

    std::uint64_t baseline_block_len() const;
};

bool is_power_of_two(std::uint64_t x);
int log2_floor(std::uint64_t x);
int log2_ceil(std::uint64_t x);

// ln(nT), the scale the polylog constants are measured against.
double log_nt(std::uint64_t n, std::uint64_t T);

const char* to_string(Algo a);
const char* to_string(AdversaryKind k);
Algo algo_from_string(const std::string& s);
AdversaryKind adversary_from_string(const std::string& s);

// Applies "KEY=VAL" overrides to a Constants block.  Unknown keys throw.
void apply_constant_override(Constants& c, const std::string& kv);

}  // namespace expool
