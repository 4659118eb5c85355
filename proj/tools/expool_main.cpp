// Command-line front end: run one game (CSV trace) or a seed sweep (summary).
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "expool/config.hpp"
#include "expool/harness.hpp"

using namespace expool;

namespace {

Mode mode_from_string(const std::string& s) {
    if (s == "desk") return Mode::kDesk;
    if (s == "paper") return Mode::kPaper;
    throw ConfigError("unknown mode: " + s);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"memory-bounded expert learners vs. adversarial loss streams"};

    std::string algo = "mwu";
    std::string adversary = "iid";
    std::string mode = "desk";
    std::string out;
    std::uint64_t n = 8;
    std::uint64_t T = 64;
    double epsilon = 0.25;
    std::uint64_t space_budget = 8;
    std::uint64_t seed = 1;
    std::uint64_t seeds = 1;
    std::uint64_t trace_stride = 1;
    bool serial = false;
    std::vector<std::string> constant_overrides;

    app.add_option("--algo", algo,
                   "mwu|squint-hedge|baseline|oblivious-full|grouped-oblivious|"
                   "adaptive|grouped-adaptive");
    app.add_option("--adversary", adversary,
                   "iid|planted|two-phase|disjointness|strong");
    app.add_option("--n", n, "number of experts");
    app.add_option("--T", T, "horizon in days");
    app.add_option("--epsilon", epsilon, "accuracy parameter (negative power of two)");
    app.add_option("--space-budget", space_budget, "space budget S");
    app.add_option("--seed", seed, "base RNG seed");
    app.add_option("--seeds", seeds, "number of seeds (>1 switches to sweep mode)");
    app.add_option("--mode", mode, "desk|paper constant profile");
    app.add_option("--constants", constant_overrides, "KEY=VAL constant overrides")
        ->expected(-1);
    app.add_option("--out", out, "output path (trace CSV or sweep summary CSV)");
    app.add_option("--trace-stride", trace_stride, "record every k-th day in the trace");
    app.add_flag("--serial", serial, "run sweep games one at a time");

    CLI11_PARSE(app, argc, argv);

    try {
        GameConfig cfg;
        cfg.algo = algo_from_string(algo);
        cfg.adversary = adversary_from_string(adversary);
        cfg.n = n;
        cfg.T = T;
        cfg.epsilon = epsilon;
        cfg.space_budget = space_budget;
        cfg.seed = seed;
        cfg.mode = mode_from_string(mode);
        cfg.constants = Constants::for_mode(cfg.mode, cfg.n, cfg.T);
        for (const std::string& kv : constant_overrides)
            apply_constant_override(cfg.constants, kv);
        cfg.validate();
        if (trace_stride == 0) throw ConfigError("--trace-stride must be positive");

        if (seeds <= 1) {
            GameTrace trace = run_game(cfg);
            if (out.empty()) {
                std::cout << trace_to_csv(trace, trace_stride);
            } else {
                write_trace_csv(trace, out, trace_stride);
            }
            const TraceRow& last = trace.rows.back();
            std::fprintf(stderr,
                         "%s vs %s  n=%llu T=%llu seed=%llu  regret=%.3f  peak_words=%zu\n",
                         to_string(cfg.algo), to_string(cfg.adversary),
                         static_cast<unsigned long long>(cfg.n),
                         static_cast<unsigned long long>(cfg.T),
                         static_cast<unsigned long long>(cfg.seed), last.regret,
                         trace.peak_words);
        } else {
            std::vector<GameConfig> configs = seed_sweep(cfg, seeds);
            std::vector<SuiteEntry> entries = run_suite(configs, !serial);
            std::vector<SummaryRow> rows = summarize(entries);
            std::cout << summary_table(rows);
            if (!out.empty()) {
                std::ofstream f(out, std::ios::binary);
                if (!f) throw std::runtime_error("cannot open " + out);
                f << summary_to_csv(rows);
            }
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
