// End-to-end acceptance runs: one labelled pass/fail line per criterion,
// nonzero exit when any fail.  Thresholds are fixed here, not tuned at run
// time; each block states its own parameters.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "expool/adversary.hpp"
#include "expool/harness.hpp"
#include "expool/interval.hpp"
#include "expool/logging.hpp"
#include "expool/monocarpic.hpp"
#include "expool/pool.hpp"

using namespace expool;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::printf("%s  criterion %2d  %-28s %s\n", pass ? "PASS" : "FAIL", id,
                name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2.0;
}

// ---------------------------------------------------------------- criterion 1

void criterion_mwu_bound() {
    bool pass = true;
    std::string detail;
    for (std::uint64_t n : {8ULL, 32ULL}) {
        GameConfig base;
        base.algo = Algo::kMwu;
        base.adversary = AdversaryKind::kIid;
        base.n = n;
        base.T = 4096;
        base.seed = 1;
        const double bound =
            3.0 * std::sqrt(static_cast<double>(base.T) * std::log(static_cast<double>(n)));
        int ok = 0;
        for (const SuiteEntry& e : run_suite(seed_sweep(base, 20), false))
            if (e.final_regret <= bound) ++ok;
        detail += "n=" + std::to_string(n) + ": " + std::to_string(ok) + "/20  ";
        if (ok < 18) pass = false;
    }
    report(1, "hedge regret bound", pass, detail);
}

// ---------------------------------------------------------------- criterion 2

// Ground-truth covering evaluation from the raw per-day loss table.
struct RawInstance {
    EntryStore store{nullptr, "acc"};
    struct Row {
        std::uint64_t entry_day = 0;
        std::vector<double> daily;
        bool live = true;
    };
    std::map<int, Row> rows;
    std::uint64_t today = 0;

    double raw_span(int uid, std::uint64_t from, std::uint64_t to) const {
        const Row& row = rows.at(uid);
        if (to != kNowDay && to <= from) return kInf;
        if (from < row.entry_day) return kInf;
        const std::uint64_t stop = to == kNowDay ? today + 1 : to;
        double sum = 0.0;
        for (std::uint64_t d = from; d < stop; ++d) {
            const std::size_t k = d - row.entry_day;
            if (k < row.daily.size()) sum += row.daily[k];
        }
        return sum;
    }

    bool raw_covered(const std::vector<int>& family, int target) const {
        if (family.empty()) return false;
        auto key = [&](int uid) {
            return std::make_pair(store.entry(uid).entry_day, uid);
        };
        std::vector<int> fam = family;
        std::sort(fam.begin(), fam.end(), [&](int a, int b) { return key(a) < key(b); });
        std::vector<std::uint64_t> bounds{store.entry(target).entry_day};
        for (int f : fam)
            if (key(f) > key(target)) bounds.push_back(store.entry(f).entry_day);
        double bench = 0.0;
        for (std::size_t i = 0; i < bounds.size(); ++i) {
            const std::uint64_t a = bounds[i];
            const std::uint64_t b = i + 1 < bounds.size() ? bounds[i + 1] : kNowDay;
            if (b != kNowDay && b <= a) continue;
            double best = kInf;
            for (int f : fam)
                if (store.entry(f).entry_day <= a) best = std::min(best, raw_span(f, a, b));
            if (best == kInf) return false;
            bench += best;
        }
        return raw_span(target, store.entry(target).entry_day, kNowDay) >= bench - 1.0;
    }
};

void criterion_cover_oracle() {
    RandomnessSource rng(2024);
    std::uint64_t pairs = 0, mismatches = 0;
    for (int trial = 0; trial < 200; ++trial) {
        RawInstance inst;
        const std::uint64_t n_experts = 2 + rng.below(5);  // <= 6
        const std::uint64_t days = 2 + rng.below(7);       // <= 8 epochs
        for (std::uint64_t d = 1; d <= days; ++d) {
            while (inst.store.live_count() < n_experts && rng.bernoulli(0.5)) {
                int uid = inst.store.admit(static_cast<ExpertId>(rng.below(n_experts)), d);
                inst.rows[uid] = RawInstance::Row{d, {}, true};
            }
            std::vector<double> by_expert;
            for (std::uint64_t i = 0; i < n_experts; ++i) by_expert.push_back(rng.uniform());
            ++inst.today;
            DayLoss loss{by_expert};
            for (auto& [uid, row] : inst.rows)
                if (row.live && row.entry_day <= inst.today)
                    row.daily.push_back(loss.of(inst.store.entry(uid).expert));
            inst.store.observe(loss);
        }
        if (trial % 3 == 2) {
            for (int uid : inst.store.live_uids())
                if (inst.store.live_count() > 1 && rng.bernoulli(0.25)) {
                    inst.store.remove(uid);
                    inst.rows[uid].live = false;
                }
            inst.store.prune_snapshots();
        }
        std::vector<int> live = inst.store.live_uids();
        const std::size_t m = live.size();
        for (std::uint64_t mask = 0; mask < (1ULL << m); ++mask) {
            std::vector<int> family;
            for (std::size_t i = 0; i < m; ++i)
                if (mask & (1ULL << i)) family.push_back(live[i]);
            for (int target : live) {
                ++pairs;
                if (is_covered(inst.store, family, target) !=
                    inst.raw_covered(family, target))
                    ++mismatches;
            }
        }
    }
    report(2, "cover oracle equivalence",
           mismatches == 0 && pairs > 5000,
           std::to_string(mismatches) + " mismatches over " + std::to_string(pairs) +
               " (family, target) pairs");
}

// ---------------------------------------------------------------- criterion 3

void criterion_interval_regret() {
    const std::uint64_t n = 4, T = 512;
    const double lognt = std::log(static_cast<double>(n * T));
    SquintGrid grid = SquintGrid::make(20);
    bool pass = true;
    std::string detail;
    for (int stream = 0; stream < 2; ++stream) {
        std::uint64_t cells = 0, good = 0;
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            RandomnessSource rng(seed * 977 + static_cast<std::uint64_t>(stream));
            IntervalRegret ir(n, T, n, T, &grid, rng.fork("ir"), nullptr, "acc3");
            RandomnessSource loss_rng = rng.fork("losses");
            std::vector<double> alg_prefix(T + 1, 0.0);
            std::vector<std::vector<double>> exp_prefix(n, std::vector<double>(T + 1, 0.0));
            for (std::uint64_t t = 1; t <= T; ++t) {
                const std::size_t pick = ir.propose(t);
                std::vector<double> day(n);
                if (stream == 0) {
                    for (std::uint64_t i = 0; i < n; ++i) day[i] = loss_rng.uniform();
                } else {
                    for (std::uint64_t i = 0; i < n; ++i) day[i] = 0.75;
                    day[t <= T / 2 ? 0 : 1] = 0.25;
                }
                ir.update(day);
                alg_prefix[t] = alg_prefix[t - 1] + day[pick];
                for (std::uint64_t i = 0; i < n; ++i)
                    exp_prefix[i][t] = exp_prefix[i][t - 1] + day[i];
            }
            for (std::uint64_t len = 1; len <= T; len *= 2) {
                const double bound = 4.0 * std::sqrt(static_cast<double>(len) * lognt);
                for (std::uint64_t first = 1; first + len - 1 <= T; first += len) {
                    const std::uint64_t last = first + len - 1;
                    const double alg = alg_prefix[last] - alg_prefix[first - 1];
                    double worst = 0.0;
                    for (std::uint64_t i = 0; i < n; ++i)
                        worst = std::max(
                            worst, alg - (exp_prefix[i][last] - exp_prefix[i][first - 1]));
                    ++cells;
                    if (worst <= bound) ++good;
                }
            }
        }
        const double rate = static_cast<double>(good) / static_cast<double>(cells);
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%s %.1f%%  ",
                      stream == 0 ? "random" : "two-phase", 100.0 * rate);
        detail += buf;
        if (rate < 0.90) pass = false;
    }
    report(3, "interval regret bound", pass, detail);
}

// ---------------------------------------------------------------- criterion 4

void criterion_monocarpic_memory() {
    const std::uint64_t n = 64, T = 1024, M = 16;
    const double lognt = std::log(static_cast<double>(n * T));
    const double budget = 8.0 * static_cast<double>(M) * lognt * lognt;
    SquintGrid grid = SquintGrid::make(20);
    MemoryMeter meter;
    bool pass = true;
    std::size_t worst = 0;
    log_mute(true);  // pre-wake days abstain and chatter
    {
        MonocarpicExpert mono(T, n, T, &grid, RandomnessSource(4), &meter, "acc4");
        RandomnessSource rng(44);
        std::set<ExpertId> alive;
        for (std::uint64_t t = 1; t <= T; ++t) {
            std::vector<ExpertId> live = mono.live_members();
            for (ExpertId id : live)
                if (alive.size() > 1 && rng.bernoulli(0.05)) {
                    mono.kill(id);
                    alive.erase(id);
                }
            while (alive.size() < M && rng.bernoulli(0.3)) {
                const ExpertId id = static_cast<ExpertId>(rng.below(n));
                if (!alive.count(id)) {
                    mono.wake(id, t);
                    alive.insert(id);
                }
            }
            mono.propose();
            std::vector<double> day;
            for (std::uint64_t i = 0; i < n; ++i) day.push_back(rng.uniform());
            mono.update(DayLoss{day});
            worst = std::max(worst, meter.current_words());
            if (static_cast<double>(meter.current_words()) > budget) pass = false;
        }
    }
    log_mute(false);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "peak %zu words vs budget %.0f", worst, budget);
    report(4, "aggregate memory budget", pass, buf);
}

// ---------------------------------------------------------------- criterion 5

void criterion_baseline_pool_cap() {
    int ok = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        GameConfig cfg;
        cfg.algo = Algo::kBaseline;
        cfg.n = 64;
        cfg.T = 8192;
        cfg.seed = seed;
        cfg.constants.block_len = 64;
        cfg.validate();
        BaselineLearner learner(cfg, nullptr, RandomnessSource(seed));
        RandomnessSource losses(seed + 5000);
        bool capped = true;
        for (std::uint64_t day = 1; day <= cfg.T; ++day) {
            learner.act(day);
            std::vector<double> v;
            for (std::uint64_t i = 0; i < cfg.n; ++i) v.push_back(losses.uniform());
            learner.observe(DayLoss{v});
            if (day % learner.block_len() == 0)
                for (std::size_t s : learner.subpool_sizes())
                    if (static_cast<double>(s) > cfg.constants.pool_cap) capped = false;
        }
        if (capped) ++ok;
    }
    report(5, "epoch-pool size cap", ok >= 19, std::to_string(ok) + "/20 seeds capped");
}

// ---------------------------------------------------------------- criterion 6

void criterion_oblivious_trend() {
    std::vector<double> med_avg;
    double regret_at_largest = 0.0;
    std::string detail;
    for (std::uint64_t T : {4096ULL, 16384ULL, 65536ULL}) {
        GameConfig base;
        base.algo = Algo::kObliviousFull;
        base.adversary = AdversaryKind::kTwoPhase;
        base.n = 32;
        base.T = T;
        base.seed = 1;
        std::vector<double> avg;
        for (const SuiteEntry& e : run_suite(seed_sweep(base, 20), true))
            avg.push_back(e.final_regret / static_cast<double>(T));
        med_avg.push_back(median(avg));
        if (T == 65536) regret_at_largest = median(avg) * static_cast<double>(T);
        char buf[48];
        std::snprintf(buf, sizeof(buf), "T=%llu: %.4f  ",
                      static_cast<unsigned long long>(T), med_avg.back());
        detail += buf;
    }
    const bool decreasing = med_avg[0] > med_avg[1] && med_avg[1] > med_avg[2];
    const bool small_tail = regret_at_largest <= 65536.0 / 8.0;
    report(6, "regret density shrinks with T", decreasing && small_tail, detail);
}

// ---------------------------------------------------------------- criterion 7

void criterion_group_scaling() {
    std::vector<double> medians;
    std::vector<double> peaks;
    std::string detail;
    log_mute(true);
    for (int G : {1, 2, 4, 8}) {
        GameConfig base;
        base.algo = Algo::kGroupedOblivious;
        base.adversary = AdversaryKind::kTwoPhase;
        base.n = 128;  // groups stay at >= 16 experts, clear of saturation
        base.T = 4096;
        base.seed = 1;
        base.constants.group_count = G;
        std::vector<double> regret;
        std::size_t peak = 0;
        for (const SuiteEntry& e : run_suite(seed_sweep(base, 20), true)) {
            regret.push_back(e.final_regret);
            peak = std::max(peak, e.peak_words);
        }
        medians.push_back(median(regret));
        peaks.push_back(static_cast<double>(peak));
        char buf[64];
        std::snprintf(buf, sizeof(buf), "G=%d: med %.0f peak %zu  ", G, medians.back(),
                      peak);
        detail += buf;
    }
    log_mute(false);
    bool regret_ok = true;
    for (std::size_t i = 1; i < medians.size(); ++i)
        if (medians[i] > medians[i - 1]) regret_ok = false;
    // Peak memory should grow steadily with G: every doubling of G lands in
    // [1.15x, 3x] and the full 1 -> 8 span in [2.2x, 14x].  (At this scale
    // the growth runs below strictly linear because smaller groups need
    // fewer pool levels per thread.)
    bool memory_ok = true;
    for (std::size_t i = 1; i < peaks.size(); ++i) {
        const double ratio = peaks[i] / peaks[i - 1];
        if (ratio < 1.15 || ratio > 3.0) memory_ok = false;
    }
    const double span = peaks[3] / peaks[0];
    if (span < 2.2 || span > 14.0) memory_ok = false;
    report(7, "space buys regret", regret_ok && memory_ok, detail);
}

// ---------------------------------------------------------------- criterion 8

void criterion_hard_stream_benchmark() {
    // n = 144 splits into blocks of width 4 at epsilon = 1/3 (the effective
    // accuracy), epochs last 3 days, and the horizon covers 20 epochs.
    const double eps = 1.0 / 3.0;
    const std::uint64_t T = 60;
    double mean_best_avg = 0.0;
    log_mute(true);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        GameConfig cfg;
        cfg.algo = Algo::kMwu;
        cfg.adversary = AdversaryKind::kDisjointness;
        cfg.n = 144;
        cfg.T = T;
        cfg.epsilon = eps;
        cfg.seed = seed;
        GameTrace t = run_game(cfg);
        mean_best_avg += t.best_expert_cum / static_cast<double>(T);
    }
    log_mute(false);
    mean_best_avg /= 20.0;
    const double bound = 1.2 * eps * eps / 20.0;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "mean best-expert avg %.5f vs %.5f", mean_best_avg,
                  bound);
    report(8, "hard stream spares someone", mean_best_avg <= bound, buf);
}

// ---------------------------------------------------------------- criterion 9

void criterion_adaptive_separation() {
    // Both arms share the stream, the horizon, and the one-expert-per-day
    // pool sampling rate (c_samp = 1); the shorter horizon keeps the
    // comparison in the regime where discovery speed matters, which is
    // where the two designs differ most.
    const std::uint64_t n = 144, T = 384;
    std::vector<double> adaptive_avg, baseline_avg;
    log_mute(true);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        GameConfig a;
        a.algo = Algo::kAdaptive;
        a.adversary = AdversaryKind::kDisjointness;
        a.n = n;
        a.T = T;
        a.epsilon = 0.25;
        a.seed = seed;
        a.constants.c_adm = 0.1;  // admission slack sized for the mostly-quiet stream
        a.constants.c_samp = 1.0;
        GameTrace ta = run_game(a);
        adaptive_avg.push_back(ta.final_regret / static_cast<double>(T));

        GameConfig b;
        b.algo = Algo::kBaseline;
        b.adversary = AdversaryKind::kDisjointness;
        b.n = n;
        b.T = T;
        b.epsilon = 0.25;
        b.seed = seed;
        b.constants.c_samp = 1.0;
        GameTrace tb = run_game(b);
        baseline_avg.push_back(tb.final_regret / static_cast<double>(T));
    }
    log_mute(false);
    const double ma = median(adaptive_avg), mb = median(baseline_avg);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "median avg regret %.4f vs baseline %.4f", ma, mb);
    report(9, "adaptive beats epoch pools", ma <= 0.5 * mb, buf);
}

// --------------------------------------------------------------- criterion 10

// Low-memory hedger that tracks a fixed subset of experts; publishes its
// mixed strategy so the strategy-aware stream can react to it.
class TrackedMwu : public Learner {
public:
    TrackedMwu(std::vector<ExpertId> ids, std::uint64_t n, std::uint64_t T,
               RandomnessSource rng)
        : ids_(std::move(ids)),
          state_(ids_.size(), mwu_eta(ids_.size(), static_cast<double>(T), n, T)),
          rng_(std::move(rng)),
          today_(n, 0.0) {}

    ExpertId act(std::uint64_t) override {
        const std::vector<double> p = mwu_distribution(state_);
        std::fill(today_.begin(), today_.end(), 0.0);
        for (std::size_t s = 0; s < ids_.size(); ++s)
            today_[static_cast<std::size_t>(ids_[s])] = p[s];
        return ids_[mwu_sample(state_, rng_.uniform())];
    }
    void observe(const DayLoss& loss) override {
        std::vector<double> v(ids_.size());
        for (std::size_t s = 0; s < ids_.size(); ++s) v[s] = loss.of(ids_[s]);
        mwu_update(state_, v);
    }
    const std::vector<double>* strategy() const override { return &today_; }

private:
    std::vector<ExpertId> ids_;
    MwuState state_;
    RandomnessSource rng_;
    std::vector<double> today_;
};

void criterion_strong_stream() {
    const std::uint64_t n = 80, T = 2000, S = 8;
    bool best_ok = true;
    std::string detail;
    log_mute(true);
    // The horizon is deliberately not a power of two, which rules the
    // full-horizon oblivious learners out of this stream.
    for (Algo algo : {Algo::kMwu, Algo::kSquintHedge, Algo::kBaseline, Algo::kAdaptive,
                      Algo::kGroupedAdaptive}) {
        double worst = 0.0;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            GameConfig cfg;
            cfg.algo = algo;
            cfg.adversary = AdversaryKind::kStrong;
            cfg.n = n;
            cfg.T = T;
            cfg.epsilon = 0.25;
            cfg.space_budget = S;
            cfg.seed = seed;
            // The default epoch length (a power of two) does not divide this
            // horizon; 40 does.
            if (algo == Algo::kBaseline) cfg.constants.block_len = 40;
            GameTrace t = run_game(cfg);
            worst = std::max(worst, t.best_expert_cum / static_cast<double>(T));
        }
        if (worst > 0.2 + 0.02) best_ok = false;
        char buf[48];
        std::snprintf(buf, sizeof(buf), "%s %.3f  ", to_string(algo), worst);
        detail += buf;
    }
    log_mute(false);

    // A tracker limited to S experts cannot dodge the heavy-set punishment.
    double tracked_avg = 0.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        RandomnessSource root(seed);
        StrongAdversary adv(n, S, root.fork("adversary"));
        std::vector<ExpertId> tracked(adv.special().begin(),
                                      adv.special().begin() + S);
        TrackedMwu learner(tracked, n, T, root.fork("learner"));
        std::vector<ExpertId> history;
        double cum = 0.0;
        for (std::uint64_t day = 1; day <= T; ++day) {
            const ExpertId action = learner.act(day);
            DayLoss loss = adv.losses({day, &history, learner.strategy()});
            cum += loss.of(action);
            learner.observe(loss);
            history.push_back(action);
        }
        tracked_avg += cum / static_cast<double>(T);
    }
    tracked_avg /= 5.0;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "tracked-hedger avg %.3f", tracked_avg);
    detail += buf;
    report(10, "strategy-aware stream", best_ok && tracked_avg >= 0.3 - 0.02, detail);
}

// --------------------------------------------------------------- criterion 11

void criterion_golden_trace() {
    GameConfig cfg;
    cfg.algo = Algo::kMwu;
    cfg.adversary = AdversaryKind::kIid;
    cfg.n = 8;
    cfg.T = 32;
    cfg.seed = 12345;
    const std::string golden =
        "day,action,alg_loss,best_cum,regret,mem_words\n"
        "1,3,0.681046,0.109593,0.571453,9\n"
        "2,7,0.975680,0.440464,1.216262,9\n"
        "3,7,0.505688,0.603250,1.559164,9\n"
        "4,7,0.757804,0.883185,2.037033,9\n"
        "5,4,0.032445,1.122046,1.830616,9\n"
        "6,3,0.823745,1.684275,2.092133,9\n"
        "7,2,0.562865,2.247141,2.092133,9\n"
        "8,1,0.715495,3.242754,1.812014,9\n"
        "9,1,0.097333,3.282303,1.869799,9\n"
        "10,1,0.108727,3.920534,1.340295,9\n"
        "11,7,0.064409,3.979415,1.345823,9\n"
        "12,2,0.475968,4.455383,1.345823,9\n"
        "13,5,0.390489,5.203225,0.988470,9\n"
        "14,5,0.550120,5.778384,0.963431,9\n"
        "15,2,0.590368,6.118559,1.213624,9\n"
        "16,5,0.936090,6.283214,1.985059,9\n"
        "17,3,0.129786,6.701250,1.696809,9\n"
        "18,1,0.637903,6.701700,2.334261,9\n"
        "19,2,0.193082,6.894782,2.334261,9\n"
        "20,1,0.316569,7.640358,1.905254,9\n"
        "21,1,0.080256,7.706445,1.919423,9\n"
        "22,4,0.459337,7.974663,2.110541,9\n"
        "23,2,0.642182,8.616845,2.110541,9\n"
        "24,2,0.153746,8.770592,2.110541,9\n"
        "25,1,0.852940,9.338118,2.395955,9\n"
        "26,1,0.505072,9.360308,2.878837,9\n"
        "27,0,0.095332,9.992326,2.342150,9\n"
        "28,2,0.937669,10.929995,2.342150,9\n"
        "29,6,0.541950,11.209753,2.604343,9\n"
        "30,3,0.138060,11.690994,2.261162,9\n"
        "31,2,0.867464,12.558457,2.261162,9\n"
        "32,7,0.661939,13.037483,2.444075,9\n";
    const std::string a = trace_to_csv(run_game(cfg));
    const std::string b = trace_to_csv(run_game(cfg));
    report(11, "byte-identical replay", a == b && a == golden,
           a == golden ? "trace matches frozen bytes" : "trace diverged from frozen bytes");
}

}  // namespace

int main() {
    struct Entry {
        int id;
        const char* name;
        void (*fn)();
    };
    const Entry plan[] = {
        {1, "hedge regret bound", criterion_mwu_bound},
        {2, "cover oracle equivalence", criterion_cover_oracle},
        {3, "interval regret bound", criterion_interval_regret},
        {4, "aggregate memory budget", criterion_monocarpic_memory},
        {5, "epoch-pool size cap", criterion_baseline_pool_cap},
        {6, "regret density shrinks with T", criterion_oblivious_trend},
        {7, "space buys regret", criterion_group_scaling},
        {8, "hard stream spares someone", criterion_hard_stream_benchmark},
        {9, "adaptive beats epoch pools", criterion_adaptive_separation},
        {10, "strategy-aware stream", criterion_strong_stream},
        {11, "byte-identical replay", criterion_golden_trace},
    };
    for (const Entry& e : plan) {
        try {
            e.fn();
        } catch (const std::exception& ex) {
            log_mute(false);
            report(e.id, e.name, false, std::string("threw: ") + ex.what());
        }
    }
    if (g_failures == 0) {
        std::printf("all 11 criteria passed\n");
    } else {
        std::printf("%d criteria FAILED\n", g_failures);
    }
    return g_failures == 0 ? 0 : 1;
}
