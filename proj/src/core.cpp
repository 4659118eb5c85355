#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <map>
#include <mutex>

#include "expool/config.hpp"
#include "expool/ledger.hpp"
#include "expool/logging.hpp"
#include "expool/loss.hpp"
#include "expool/meter.hpp"
#include "expool/rng.hpp"

namespace expool {

// ---------------------------------------------------------------- randomness

std::size_t sample_index(const std::vector<double>& weights, double u) {
    assert(!weights.empty());
    double total = 0.0;
    std::size_t heaviest = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        assert(weights[i] >= 0.0);
        total += weights[i];
        if (weights[i] > weights[heaviest]) heaviest = i;  // strict: ties keep the lowest index
    }
    if (total <= 0.0) return 0;  // degenerate all-zero weights: lowest index
    double target = u * total;
    // Visit the heaviest index first so u == 0 picks it deterministically.
    target -= weights[heaviest];
    if (target < 0.0) return heaviest;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (i == heaviest) continue;
        target -= weights[i];
        if (target < 0.0) return i;
    }
    // Rounding pushed us past the end; return the last positive-weight index.
    for (std::size_t i = weights.size(); i-- > 0;) {
        if (weights[i] > 0.0 && i != heaviest) return i;
    }
    return heaviest;
}

// --------------------------------------------------------------------- meter

void MemoryMeter::charge(std::size_t words, std::string_view label) {
    current_ += words;
    peak_ = std::max(peak_, current_);
    by_label_[std::string(label)] += words;
}

void MemoryMeter::discharge(std::size_t words, std::string_view label) {
    auto it = by_label_.find(std::string(label));
    if (current_ < words || it == by_label_.end() || it->second < words) {
        std::cerr << "meter accounting bug: discharging " << words << " words for '" << label
                  << "' (current " << current_ << ")\n";
        std::abort();
    }
    current_ -= words;
    it->second -= words;
}

MeterLease& MeterLease::operator=(MeterLease&& other) noexcept {
    release();
    meter_ = other.meter_;
    label_ = std::move(other.label_);
    words_ = other.words_;
    other.meter_ = nullptr;
    other.words_ = 0;
    return *this;
}

void MeterLease::resize(std::size_t words) {
    if (!meter_) return;
    if (words > words_) {
        meter_->charge(words - words_, label_);
    } else if (words < words_) {
        meter_->discharge(words_ - words, label_);
    }
    words_ = words;
}

void MeterLease::release() {
    if (meter_ && words_ > 0) meter_->discharge(words_, label_);
    if (meter_) meter_ = nullptr;
    words_ = 0;
}

// ---------------------------------------------------------------------- loss

std::size_t clamp_losses(DayLoss& loss) {
    std::size_t clamped = 0;
    for (double& v : loss.values) {
        if (v < 0.0) {
            v = 0.0;
            ++clamped;
        } else if (v > 1.0) {
            v = 1.0;
            ++clamped;
        }
    }
    return clamped;
}

int pw(std::uint64_t t) {
    assert(t > 0);
    return std::countr_zero(t);
}

// -------------------------------------------------------------------- ledger

void RegretLedger::record(ExpertId action, const DayLoss& loss) {
    assert(loss.size() == expert_cum_.size());
    alg_cum_ += loss.of(action);
    for (std::size_t i = 0; i < expert_cum_.size(); ++i) expert_cum_[i] += loss.values[i];
    ++days_;
}

double RegretLedger::best_expert_cum() const {
    double best = std::numeric_limits<double>::infinity();
    for (double c : expert_cum_) best = std::min(best, c);
    return expert_cum_.empty() ? 0.0 : best;
}

// ------------------------------------------------------------------- logging

namespace {
std::mutex g_log_mutex;
bool g_log_muted = false;
constexpr int kMaxPerCategory = 5;

void log_impl(const char* level, std::string_view category, std::string_view message) {
    static std::map<std::string, int> counts;
    std::lock_guard<std::mutex> lock(g_log_mutex);
    if (g_log_muted) return;
    int& c = counts[std::string(category)];
    ++c;
    if (c > kMaxPerCategory) return;
    std::cerr << "[" << level << "] " << category << ": " << message;
    if (c == kMaxPerCategory) std::cerr << " (further messages in this category suppressed)";
    std::cerr << "\n";
}
}  // namespace

void log_warn(std::string_view category, std::string_view message) {
    log_impl("warn", category, message);
}

void log_info(std::string_view category, std::string_view message) {
    log_impl("info", category, message);
}

void log_mute(bool mute) {
    std::lock_guard<std::mutex> lock(g_log_mutex);
    g_log_muted = mute;
}

// -------------------------------------------------------------------- config

bool is_power_of_two(std::uint64_t x) { return x > 0 && (x & (x - 1)) == 0; }

int log2_floor(std::uint64_t x) {
    assert(x > 0);
    return 63 - std::countl_zero(x);
}

int log2_ceil(std::uint64_t x) {
    assert(x > 0);
    return is_power_of_two(x) ? log2_floor(x) : log2_floor(x) + 1;
}

double log_nt(std::uint64_t n, std::uint64_t T) {
    return std::log(static_cast<double>(n) * static_cast<double>(T));
}

Constants Constants::for_mode(Mode mode, std::uint64_t n, std::uint64_t T) {
    Constants c;
    if (mode == Mode::kPaper) {
        const double lnt = log_nt(n, T);
        c.p_sample = std::min(1.0, 1.0 / std::pow(lnt, 4));
        c.size_threshold = std::pow(lnt, 5);
        c.pool_cap = 2.0 * std::pow(lnt, 9);
        c.k_iters = std::max(1, static_cast<int>(16.0 * lnt));
        c.c_samp = 1.0;
        c.c_n = lnt * lnt;
        c.c_adm = 2.0 * lnt;
        c.r_max = 1 << 20;  // effectively uncapped
    }
    return c;
}

std::uint64_t GameConfig::baseline_block_len() const {
    if (constants.block_len != 0) return constants.block_len;
    // Largest power of two no larger than sqrt(T).
    std::uint64_t b = 1;
    while (b * b * 4 <= T) b *= 2;
    return b;
}

namespace {
bool is_neg_power_of_two(double eps, int* k_out) {
    if (eps <= 0.0 || eps > 0.5) return false;
    double inv = 1.0 / eps;
    std::uint64_t r = static_cast<std::uint64_t>(inv + 0.5);
    if (!is_power_of_two(r)) return false;
    if (std::abs(inv - static_cast<double>(r)) > 1e-9 * inv) return false;
    if (k_out) *k_out = log2_floor(r);
    return true;
}

void validate_adaptive(std::uint64_t n, std::uint64_t T, double eps) {
    int k = 0;
    if (!is_neg_power_of_two(eps, &k)) {
        throw ConfigError("adaptive learner needs epsilon = 2^-k with k >= 1");
    }
    std::uint64_t block = static_cast<std::uint64_t>(std::llround(1.0 / (eps * eps)));
    if (T % block != 0) {
        throw ConfigError("adaptive learner needs 1/epsilon^2 to divide the horizon T");
    }
    if (n < 1) throw ConfigError("need at least one expert");
}

void validate_oblivious(std::uint64_t n, std::uint64_t T) {
    if (!is_power_of_two(n) || !is_power_of_two(T)) {
        throw ConfigError("pool-thread learner needs n and T to be powers of two");
    }
    if (T < 2 * n) throw ConfigError("pool-thread learner needs T >= 2n");
}
}  // namespace

void GameConfig::validate() const {
    if (n == 0) throw ConfigError("need at least one expert");
    if (T == 0) throw ConfigError("need at least one day");
    if (space_budget == 0) throw ConfigError("space budget must be positive");

    switch (algo) {
        case Algo::kMwu:
        case Algo::kSquintHedge:
            break;
        case Algo::kBaseline: {
            std::uint64_t b = baseline_block_len();
            if (b == 0 || T % b != 0) {
                throw ConfigError("baseline epoch length must divide the horizon T");
            }
            break;
        }
        case Algo::kObliviousFull:
            validate_oblivious(n, T);
            break;
        case Algo::kGroupedOblivious: {
            std::uint64_t g = constants.group_count > 0
                                  ? static_cast<std::uint64_t>(constants.group_count)
                                  : std::max<std::uint64_t>(1, space_budget);
            if (g > n) throw ConfigError("more groups than experts");
            // Groups are balanced; the largest group must satisfy the
            // per-instance requirements.
            std::uint64_t biggest = (n + g - 1) / g;
            if (g == 1) {
                validate_oblivious(n, T);
            } else if (biggest >= 2) {
                validate_oblivious(biggest, T);
            }
            break;
        }
        case Algo::kAdaptive:
            validate_adaptive(n, T, epsilon);
            break;
        case Algo::kGroupedAdaptive: {
            std::uint64_t g = constants.group_count > 0
                                  ? static_cast<std::uint64_t>(constants.group_count)
                                  : 1;
            if (g > n) throw ConfigError("more groups than experts");
            if (g == 1) {
                validate_adaptive(n, T, epsilon);
            } else {
                int half_levels = (log2_ceil(g) + 1) / 2;
                double eps_group = epsilon * static_cast<double>(1ULL << half_levels);
                if (eps_group > 0.5) eps_group = 0.5;
                validate_adaptive((n + g - 1) / g, T, eps_group);
            }
            break;
        }
    }

    if (adversary == AdversaryKind::kStrong) {
        if (10 * space_budget > n) {
            throw ConfigError("heavy-set stream needs 10 * space_budget <= n");
        }
    }
    if (adversary == AdversaryKind::kDisjointness) {
        // A usable block width must exist: a divisor of n, congruent to
        // 1 mod 3, at least 4.
        bool found = false;
        for (std::uint64_t m = 4; m <= n; ++m) {
            if (n % m == 0 && m % 3 == 1) {
                found = true;
                break;
            }
        }
        if (!found) {
            throw ConfigError("epoch-structured stream needs a divisor of n that is >= 4 and = 1 mod 3");
        }
    }
}

const char* to_string(Algo a) {
    switch (a) {
        case Algo::kMwu: return "mwu";
        case Algo::kSquintHedge: return "squint-hedge";
        case Algo::kBaseline: return "baseline";
        case Algo::kObliviousFull: return "oblivious-full";
        case Algo::kGroupedOblivious: return "grouped-oblivious";
        case Algo::kAdaptive: return "adaptive";
        case Algo::kGroupedAdaptive: return "grouped-adaptive";
    }
    return "?";
}

const char* to_string(AdversaryKind k) {
    switch (k) {
        case AdversaryKind::kIid: return "iid";
        case AdversaryKind::kPlanted: return "planted";
        case AdversaryKind::kTwoPhase: return "two-phase";
        case AdversaryKind::kDisjointness: return "disjointness";
        case AdversaryKind::kStrong: return "strong";
    }
    return "?";
}

Algo algo_from_string(const std::string& s) {
    if (s == "mwu") return Algo::kMwu;
    if (s == "squint-hedge") return Algo::kSquintHedge;
    if (s == "baseline") return Algo::kBaseline;
    if (s == "oblivious-full") return Algo::kObliviousFull;
    if (s == "grouped-oblivious") return Algo::kGroupedOblivious;
    if (s == "adaptive") return Algo::kAdaptive;
    if (s == "grouped-adaptive") return Algo::kGroupedAdaptive;
    throw ConfigError("unknown algorithm: " + s);
}

AdversaryKind adversary_from_string(const std::string& s) {
    if (s == "iid") return AdversaryKind::kIid;
    if (s == "planted") return AdversaryKind::kPlanted;
    if (s == "two-phase") return AdversaryKind::kTwoPhase;
    if (s == "disjointness") return AdversaryKind::kDisjointness;
    if (s == "strong") return AdversaryKind::kStrong;
    throw ConfigError("unknown adversary: " + s);
}

void apply_constant_override(Constants& c, const std::string& kv) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("constant override must look like KEY=VAL: " + kv);
    std::string key = kv.substr(0, eq);
    std::string val = kv.substr(eq + 1);
    try {
        if (key == "p_sample") c.p_sample = std::stod(val);
        else if (key == "size_threshold") c.size_threshold = std::stod(val);
        else if (key == "pool_cap") c.pool_cap = std::stod(val);
        else if (key == "k_iters") c.k_iters = std::stoi(val);
        else if (key == "c_samp") c.c_samp = std::stod(val);
        else if (key == "c_n") c.c_n = std::stod(val);
        else if (key == "c_adm") c.c_adm = std::stod(val);
        else if (key == "r_max") c.r_max = std::stoi(val);
        else if (key == "squint_octaves") c.squint_octaves = std::stoi(val);
        else if (key == "block_len" || key == "B") c.block_len = std::stoull(val);
        else if (key == "group_count" || key == "G") c.group_count = std::stoi(val);
        else throw ConfigError("unknown constant: " + key);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError("bad value for constant " + key + ": " + val);
    }
}

}  // namespace expool
