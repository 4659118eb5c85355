#include "expool/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "expool/adaptive.hpp"
#include "expool/hedger.hpp"
#include "expool/logging.hpp"
#include "expool/oblivious.hpp"
#include "expool/pool.hpp"

namespace expool {

std::unique_ptr<Learner> make_learner(const GameConfig& cfg, MemoryMeter* meter,
                                      RandomnessSource rng) {
    switch (cfg.algo) {
        case Algo::kMwu:
            return std::make_unique<MwuLearner>(cfg.n, cfg.T, std::move(rng), meter);
        case Algo::kSquintHedge:
            return std::make_unique<SquintHedgeLearner>(cfg.n, cfg.constants.squint_octaves,
                                                        std::move(rng), meter);
        case Algo::kBaseline:
            return std::make_unique<BaselineLearner>(cfg, meter, std::move(rng));
        case Algo::kObliviousFull:
            return std::make_unique<FullObliviousLearner>(cfg, meter, std::move(rng));
        case Algo::kGroupedOblivious:
            return make_grouped_oblivious(cfg, meter, std::move(rng));
        case Algo::kAdaptive:
            return std::make_unique<AdaptiveLearner>(cfg, meter, std::move(rng));
        case Algo::kGroupedAdaptive:
            return make_grouped_adaptive(cfg, meter, std::move(rng));
    }
    throw ConfigError("unknown algorithm");
}

GameTrace run_game(const GameConfig& cfg) {
    cfg.validate();
    RandomnessSource root(cfg.seed);
    MemoryMeter meter;
    auto learner = make_learner(cfg, &meter, root.fork("learner"));
    auto adversary = make_adversary(cfg, root.fork("adversary"));
    RegretLedger ledger(cfg.n);

    GameTrace trace;
    trace.config = cfg;
    trace.rows.reserve(cfg.T);
    std::vector<ExpertId> history;
    history.reserve(cfg.T);
    std::vector<double> point;  // strategy stand-in for samplers

    for (std::uint64_t day = 1; day <= cfg.T; ++day) {
        const ExpertId action = learner->act(day);
        const std::vector<double>* strat = nullptr;
        if (cfg.adversary == AdversaryKind::kStrong) {
            strat = learner->strategy();
            if (strat == nullptr) {
                if (action == kAbstain) {
                    point.assign(cfg.n, 1.0 / static_cast<double>(cfg.n));
                } else {
                    point.assign(cfg.n, 0.0);
                    point[static_cast<std::size_t>(action)] = 1.0;
                }
                strat = &point;
            }
        }
        AdversaryContext ctx{day, &history, strat};
        DayLoss loss = adversary->losses(ctx);
        if (const std::size_t fixed = clamp_losses(loss); fixed > 0)
            log_warn("harness", "clamped " + std::to_string(fixed) +
                                    " out-of-range loss entries");
        ledger.record(action, loss);
        learner->observe(loss);
        history.push_back(action);
        trace.rows.push_back({day, action, loss.of(action), ledger.best_expert_cum(),
                              ledger.regret(), meter.current_words()});
    }
    trace.algorithm_cum = ledger.algorithm_cum();
    trace.best_expert_cum = ledger.best_expert_cum();
    trace.final_regret = ledger.regret();
    trace.peak_words = meter.peak_words();
    trace.expert_cums = ledger.expert_cums();
    return trace;
}

std::string trace_to_csv(const GameTrace& trace, std::uint64_t stride) {
    if (stride == 0) stride = 1;
    std::string out = "day,action,alg_loss,best_cum,regret,mem_words\n";
    char buf[160];
    for (const TraceRow& r : trace.rows) {
        if ((r.day - 1) % stride != 0 && r.day != trace.config.T) continue;
        std::snprintf(buf, sizeof(buf), "%llu,%d,%.6f,%.6f,%.6f,%zu\n",
                      static_cast<unsigned long long>(r.day), static_cast<int>(r.action),
                      r.alg_loss, r.best_cum, r.regret, r.mem_words);
        out += buf;
    }
    return out;
}

void write_trace_csv(const GameTrace& trace, const std::string& path,
                     std::uint64_t stride) {
    std::ofstream f(path, std::ios::binary);  // binary keeps LF endings everywhere
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << trace_to_csv(trace, stride);
}

std::vector<SuiteEntry> run_suite(const std::vector<GameConfig>& configs, bool parallel) {
    std::vector<SuiteEntry> out(configs.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (long long i = 0; i < static_cast<long long>(configs.size()); ++i) {
        const GameTrace t = run_game(configs[static_cast<std::size_t>(i)]);
        out[static_cast<std::size_t>(i)] =
            SuiteEntry{t.config, t.final_regret, t.algorithm_cum, t.best_expert_cum,
                       t.peak_words};
    }
    (void)parallel;
    return out;
}

namespace {
std::string config_group_key(const GameConfig& c) {
    std::ostringstream k;
    k << to_string(c.algo) << '|' << to_string(c.adversary) << '|' << c.n << '|' << c.T
      << '|' << c.epsilon << '|' << c.space_budget << '|'
      << (c.mode == Mode::kDesk ? "desk" : "paper") << '|' << c.constants.block_len
      << '|' << c.constants.group_count << '|' << c.constants.c_adm << '|'
      << c.constants.c_samp;
    return k.str();
}

double quantile(std::vector<double> v, double q) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    if (v.size() == 1) return v[0];
    const double pos = q * static_cast<double>(v.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return v[lo] * (1.0 - frac) + v[hi] * frac;
}
}  // namespace

std::vector<SummaryRow> summarize(const std::vector<SuiteEntry>& entries) {
    std::vector<std::string> order;
    std::map<std::string, std::vector<const SuiteEntry*>> groups;
    for (const SuiteEntry& e : entries) {
        const std::string key = config_group_key(e.config);
        if (!groups.count(key)) order.push_back(key);
        groups[key].push_back(&e);
    }
    std::vector<SummaryRow> rows;
    rows.reserve(order.size());
    for (const std::string& key : order) {
        const auto& members = groups[key];
        SummaryRow row;
        row.representative = members.front()->config;
        row.games = members.size();
        std::vector<double> regrets, avg;
        for (const SuiteEntry* e : members) {
            regrets.push_back(e->final_regret);
            avg.push_back(e->final_regret / static_cast<double>(e->config.T));
            row.max_peak_words = std::max(row.max_peak_words, e->peak_words);
        }
        row.median_regret = quantile(regrets, 0.5);
        row.p25_regret = quantile(regrets, 0.25);
        row.p75_regret = quantile(regrets, 0.75);
        row.median_avg_regret = quantile(avg, 0.5);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string summary_table(const std::vector<SummaryRow>& rows) {
    std::ostringstream out;
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%-18s %-13s %6s %8s %6s %12s %12s %12s %10s\n",
                  "algo", "adversary", "n", "T", "games", "median_regret", "p25", "p75",
                  "peak_words");
    out << buf;
    for (const SummaryRow& r : rows) {
        std::snprintf(buf, sizeof(buf),
                      "%-18s %-13s %6llu %8llu %6zu %12.3f %12.3f %12.3f %10zu\n",
                      to_string(r.representative.algo),
                      to_string(r.representative.adversary),
                      static_cast<unsigned long long>(r.representative.n),
                      static_cast<unsigned long long>(r.representative.T), r.games,
                      r.median_regret, r.p25_regret, r.p75_regret, r.max_peak_words);
        out << buf;
    }
    return out.str();
}

std::string summary_to_csv(const std::vector<SummaryRow>& rows) {
    std::string out =
        "algo,adversary,n,T,epsilon,space_budget,games,median_regret,p25_regret,"
        "p75_regret,median_avg_regret,max_peak_words\n";
    char buf[256];
    for (const SummaryRow& r : rows) {
        std::snprintf(buf, sizeof(buf), "%s,%s,%llu,%llu,%.6f,%llu,%zu,%.6f,%.6f,%.6f,%.6f,%zu\n",
                      to_string(r.representative.algo),
                      to_string(r.representative.adversary),
                      static_cast<unsigned long long>(r.representative.n),
                      static_cast<unsigned long long>(r.representative.T),
                      r.representative.epsilon,
                      static_cast<unsigned long long>(r.representative.space_budget),
                      r.games, r.median_regret, r.p25_regret, r.p75_regret,
                      r.median_avg_regret, r.max_peak_words);
        out += buf;
    }
    return out;
}

std::vector<GameConfig> seed_sweep(const GameConfig& base, std::uint64_t seeds) {
    std::vector<GameConfig> out;
    out.reserve(seeds);
    for (std::uint64_t s = 0; s < seeds; ++s) {
        GameConfig c = base;
        c.seed = base.seed + s;
        out.push_back(c);
    }
    return out;
}

}  // namespace expool
