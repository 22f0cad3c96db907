#pragma once

#include <sparity/baselines.hpp>
#include <sparity/combinatorics.hpp>
#include <sparity/cover_design.hpp>
#include <sparity/errors.hpp>
#include <sparity/mb_to_pac.hpp>
#include <sparity/noisy_reduction.hpp>
#include <sparity/online_learner.hpp>
#include <sparity/oracles.hpp>
#include <sparity/rng.hpp>

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

namespace sparity::harness {

using Json = nlohmann::ordered_json;

enum class ReportFormat { csv, json };

struct CommonOptions {
    std::uint64_t seed = 1;
    std::size_t trials = 1;
    ReportFormat format = ReportFormat::csv;
    std::string out; ///< empty: standard output
};

/// kn/t + log2 C(t,k): the closed-form mistake bound without its (1+o(1)) factor.
inline double closed_form_bound(std::size_t n, std::size_t k, std::size_t t) {
    return static_cast<double>(k) * static_cast<double>(n) / static_cast<double>(t) +
           static_cast<double>(log2_big(binom(t, k)));
}

/// Default example cap for noiseless runs: ceil(4 * closed_form_bound).
inline std::size_t default_max_samples(std::size_t n, std::size_t k, std::size_t t) {
    return static_cast<std::size_t>(std::ceil(4.0 * closed_form_bound(n, k, t) - 1e-9));
}

/// One row of a learn-* report. Columns that do not apply to a run are empty.
struct TrialRow {
    std::uint64_t seed = 0;
    std::size_t n = 0;
    std::size_t k = 0;
    std::optional<std::size_t> t;
    std::optional<std::size_t> alpha;
    std::optional<double> eta;
    std::optional<double> delta;
    std::optional<std::size_t> mistakes;
    std::size_t samples = 0;
    bool identified = false;
    std::optional<std::size_t> exact_bound;
    std::optional<double> paper_bound;
    std::int64_t wall_ns = 0;
    std::optional<std::uint64_t> inner_invocations;
};

inline constexpr const char* trial_csv_header =
    "seed,n,k,t,alpha,eta,delta,mistakes,samples,identified,exact_bound,paper_bound,wall_ns,inner_invocations";

namespace detail {
inline std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}
template <class T>
std::string cell(const std::optional<T>& v) {
    if (!v) return "";
    if constexpr (std::is_floating_point_v<T>)
        return fmt_double(*v);
    else
        return std::to_string(*v);
}
template <class T>
Json json_cell(const std::optional<T>& v) {
    if (!v) return nullptr;
    if constexpr (std::is_floating_point_v<T>)
        return std::round(*v * 1e6) / 1e6;
    else
        return *v;
}
inline std::int64_t elapsed_ns(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start).count();
}
} // namespace detail

inline void write_trials_csv(std::ostream& os, const std::vector<TrialRow>& rows) {
    os << trial_csv_header << '\n';
    for (const auto& r : rows) {
        os << r.seed << ',' << r.n << ',' << r.k << ',' << detail::cell(r.t) << ',' << detail::cell(r.alpha) << ','
           << detail::cell(r.eta) << ',' << detail::cell(r.delta) << ',' << detail::cell(r.mistakes) << ','
           << r.samples << ',' << (r.identified ? "true" : "false") << ',' << detail::cell(r.exact_bound) << ','
           << detail::cell(r.paper_bound) << ',' << r.wall_ns << ',' << detail::cell(r.inner_invocations) << '\n';
    }
}

inline Json trials_json(const std::string& command, const std::vector<TrialRow>& rows) {
    Json arr = Json::array();
    for (const auto& r : rows) {
        arr.push_back(Json{{"seed", r.seed},
                           {"n", r.n},
                           {"k", r.k},
                           {"t", detail::json_cell(r.t)},
                           {"alpha", detail::json_cell(r.alpha)},
                           {"eta", detail::json_cell(r.eta)},
                           {"delta", detail::json_cell(r.delta)},
                           {"mistakes", detail::json_cell(r.mistakes)},
                           {"samples", r.samples},
                           {"identified", r.identified},
                           {"exact_bound", detail::json_cell(r.exact_bound)},
                           {"paper_bound", detail::json_cell(r.paper_bound)},
                           {"wall_ns", r.wall_ns},
                           {"inner_invocations", detail::json_cell(r.inner_invocations)}});
    }
    return Json{{"command", command}, {"rows", std::move(arr)}};
}

// ---------------------------------------------------------------------------
// learn-noiseless

struct NoiselessConfig {
    CommonOptions common;
    std::size_t n = 64;
    std::size_t k = 3;
    std::size_t t = 12;
    std::size_t alpha = 2;
    std::string learner = "online"; ///< online | halving
    std::size_t max_samples = 0;    ///< 0: default_max_samples
    std::uint64_t cover_budget = default_cover_budget;
    std::uint64_t candidate_budget = default_candidate_budget;

    void validate() const {
        require(common.trials >= 1, "trials must be at least 1");
        require(learner == "online" || learner == "halving", "learner must be 'online' or 'halving'");
        if (learner == "online") CoverParams{n, k, t, alpha}.validate();
        require(k <= n, "need k <= n");
        require(t >= 1, "need t >= 1");
    }

    std::size_t sample_cap() const { return max_samples != 0 ? max_samples : default_max_samples(n, k, t); }
};

/// Seeds per trial: hidden from fork(0), learner cover family from fork(1),
/// example stream from fork(2) of Rng(trial_seed).
struct TrialSeeds {
    std::uint64_t hidden;
    std::uint64_t learner;
    std::uint64_t stream;

    explicit TrialSeeds(std::uint64_t trial_seed) {
        const Rng root(trial_seed);
        hidden = root.fork(0).seed();
        learner = root.fork(1).seed();
        stream = root.fork(2).seed();
    }
};

template <class Learner>
std::size_t feed_until_identified(Learner& learner, ExampleSource& source, std::size_t cap,
                                   std::vector<LabeledExample>* record = nullptr) {
    std::size_t samples = 0;
    while (samples < cap && !is_identified(learner.status())) {
        auto ex = source.next();
        learner.observe(ex.a, ex.label);
        if (record) record->push_back(ex);
        ++samples;
    }
    return samples;
}

inline TrialRow run_noiseless_trial(const NoiselessConfig& cfg, std::uint64_t trial_seed,
                                    std::vector<LabeledExample>* record = nullptr) {
    const TrialSeeds seeds(trial_seed);
    TrialRow row;
    row.seed = trial_seed;
    row.n = cfg.n;
    row.k = cfg.k;
    row.t = cfg.t;
    row.alpha = cfg.alpha;
    row.paper_bound = closed_form_bound(cfg.n, cfg.k, cfg.t);

    const auto hidden = gen_hidden(cfg.n, cfg.k, seeds.hidden);
    auto source = ExampleSource::uniform(hidden, seeds.stream);
    const auto start = std::chrono::steady_clock::now();
    auto finish = [&](const auto& learner, std::size_t samples) {
        row.wall_ns = detail::elapsed_ns(start);
        row.samples = samples;
        row.mistakes = learner.mistakes();
        row.exact_bound = learner.mistake_bound();
        const auto status = learner.status();
        row.identified = is_identified(status) && std::get<Identified>(status).hypothesis == hidden;
    };
    if (cfg.learner == "halving") {
        HalvingLearner learner(cfg.n, cfg.k, cfg.candidate_budget);
        finish(learner, feed_until_identified(learner, source, cfg.sample_cap(), record));
    } else {
        auto learner = OnlineLearner::create(cfg.n, cfg.k, cfg.t, cfg.alpha, seeds.learner, {cfg.cover_budget, 10});
        finish(learner, feed_until_identified(learner, source, cfg.sample_cap(), record));
    }
    return row;
}

inline std::vector<TrialRow> run_noiseless(const NoiselessConfig& cfg) {
    cfg.validate();
    std::vector<TrialRow> rows;
    for (std::size_t i = 0; i < cfg.common.trials; ++i) rows.push_back(run_noiseless_trial(cfg, cfg.common.seed + i));
    return rows;
}

/// Replays a stream file through the online learner; one row, and the
/// identified vector (if any) in `hypothesis`.
inline TrialRow replay_noiseless(const NoiselessConfig& cfg, const std::vector<LabeledExample>& stream,
                                 std::optional<BitVector>* hypothesis = nullptr) {
    cfg.validate();
    require(stream.empty() || stream.front().a.size() == cfg.n, "stream vectors must have length n");
    const TrialSeeds seeds(cfg.common.seed);
    TrialRow row;
    row.seed = cfg.common.seed;
    row.n = cfg.n;
    row.k = cfg.k;
    row.t = cfg.t;
    row.alpha = cfg.alpha;
    row.paper_bound = closed_form_bound(cfg.n, cfg.k, cfg.t);
    auto source = ExampleSource::replay(stream);
    const auto start = std::chrono::steady_clock::now();
    auto finish = [&](const auto& learner, std::size_t samples) {
        row.wall_ns = detail::elapsed_ns(start);
        row.samples = samples;
        row.mistakes = learner.mistakes();
        row.exact_bound = learner.mistake_bound();
        const auto status = learner.status();
        row.identified = is_identified(status);
        if (hypothesis && row.identified) *hypothesis = std::get<Identified>(status).hypothesis;
    };
    const std::size_t cap = std::min(cfg.max_samples != 0 ? cfg.max_samples : stream.size(), stream.size());
    if (cfg.learner == "halving") {
        HalvingLearner learner(cfg.n, cfg.k, cfg.candidate_budget);
        finish(learner, feed_until_identified(learner, source, cap));
    } else {
        auto learner = OnlineLearner::create(cfg.n, cfg.k, cfg.t, cfg.alpha, seeds.learner, {cfg.cover_budget, 10});
        finish(learner, feed_until_identified(learner, source, cap));
    }
    return row;
}

// ---------------------------------------------------------------------------
// learn-noisy

struct NoisyConfig {
    CommonOptions common;
    std::size_t n = 24;
    std::size_t k = 2;
    double eta = 0.05;
    double delta = 0.2;
    std::string inner = "mitm"; ///< mitm | pac-online
    std::size_t t = 0;          ///< pac-online only
    std::size_t alpha = 2;      ///< pac-online only
    std::uint64_t flip_set_budget = default_flip_set_budget;
    std::optional<std::size_t> s_prime;       ///< override of the derived s'
    std::optional<std::size_t> s_doubleprime; ///< override of the derived s''

    void validate() const {
        require(common.trials >= 1, "trials must be at least 1");
        require(inner == "mitm" || inner == "pac-online", "inner must be 'mitm' or 'pac-online'");
        require(k <= n, "need k <= n");
        require(eta > 0.0 && eta < 1.0 / 3.0, "eta must lie in (0, 1/3)");
        require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
        if (inner == "pac-online") CoverParams{n, k, t, alpha}.validate();
    }
};

struct NoisySetup {
    InnerLearner inner;
    NoisyParams params;
};

inline NoisySetup make_noisy_setup(const NoisyConfig& cfg, std::uint64_t learner_seed) {
    cfg.validate();
    NoisySetup s{cfg.inner == "mitm"
                     ? mitm_inner(cfg.n, cfg.k)
                     : pac_online_inner(OnlineLearner::create(cfg.n, cfg.k, cfg.t, cfg.alpha, learner_seed)),
                 {}};
    s.params = NoisyParams::derive(cfg.eta, cfg.delta, s.inner.sample_complexity(cfg.delta / 2.0));
    if (cfg.s_prime || cfg.s_doubleprime)
        s.params = NoisyParams::with_counts(cfg.eta, cfg.delta, cfg.s_prime.value_or(s.params.s_prime),
                                            cfg.s_doubleprime.value_or(s.params.s_doubleprime));
    return s;
}

inline TrialRow run_noisy_trial(const NoisyConfig& cfg, std::uint64_t trial_seed) {
    const TrialSeeds seeds(trial_seed);
    TrialRow row;
    row.seed = trial_seed;
    row.n = cfg.n;
    row.k = cfg.k;
    if (cfg.inner == "pac-online") {
        row.t = cfg.t;
        row.alpha = cfg.alpha;
    }
    row.eta = cfg.eta;
    row.delta = cfg.delta;
    const auto setup = make_noisy_setup(cfg, seeds.learner);
    const auto hidden = gen_hidden(cfg.n, cfg.k, seeds.hidden);
    auto source = ExampleSource::uniform(hidden, seeds.stream, cfg.eta);
    const auto start = std::chrono::steady_clock::now();
    try {
        const auto out = noisy_learn(setup.inner, source, setup.params, cfg.flip_set_budget);
        row.identified = out.hypothesis == hidden;
        row.inner_invocations = out.inner_invocations;
        row.samples = out.samples_drawn;
    } catch (const no_candidates&) {
        row.identified = false;
        row.inner_invocations = static_cast<std::uint64_t>(setup.params.flip_set_count());
        row.samples = source.drawn();
    }
    row.wall_ns = detail::elapsed_ns(start);
    return row;
}

inline std::vector<TrialRow> run_noisy(const NoisyConfig& cfg) {
    cfg.validate();
    std::vector<TrialRow> rows;
    for (std::size_t i = 0; i < cfg.common.trials; ++i) rows.push_back(run_noisy_trial(cfg, cfg.common.seed + i));
    return rows;
}

// ---------------------------------------------------------------------------
// cover-check

struct CoverCheckConfig {
    CoverParams params;
    std::uint64_t seed = 1;
    std::uint64_t budget = default_cover_budget;
    std::string out;
};

/// {n,k,t,alpha,T,m,seed,verified,parts,subsets} for one sampled family.
inline Json cover_family_json(const CoverFamily& f) {
    return Json{{"n", f.params.n},       {"k", f.params.k},         {"t", f.params.t},
                {"alpha", f.params.alpha}, {"T", f.params.parts()},   {"m", f.subsets.size()},
                {"seed", f.seed},         {"verified", f.verified}, {"parts", f.parts},
                {"subsets", f.subsets}};
}

inline CoverVerification cover_check(const CoverCheckConfig& cfg) {
    return verify_cover(sample_family(cfg.params, cfg.seed), cfg.budget);
}

// ---------------------------------------------------------------------------
// bench

struct BenchConfig {
    CommonOptions common;
    std::size_t n = 96;
    std::size_t k = 3;
    std::vector<std::size_t> t_grid{16, 8};
    std::size_t alpha = 2;
    std::size_t max_samples = 0; ///< 0: default_max_samples per t

    void validate() const {
        require(common.trials >= 1, "trials must be at least 1");
        require(!t_grid.empty(), "t grid must not be empty");
        for (auto t : t_grid) CoverParams{n, k, t, alpha}.validate();
    }
};

struct BenchRow {
    std::size_t t = 0;
    std::size_t T = 0;
    std::uint64_t family_m = 0;
    double mean_charts = 0;
    double mean_samples = 0;
    double mean_mistakes = 0;
    double identified_fraction = 0;
    double mean_round_ns = 0;
    /// log2(charts(previous t) / charts(this t)) / k against the previous grid point.
    std::optional<double> rate_log2_per_k;
    std::vector<std::size_t> charts_per_trial;
};

inline constexpr const char* bench_csv_header =
    "t,T,family_m,mean_charts,mean_samples,mean_mistakes,identified_fraction,rate_log2_per_k,mean_round_ns";

/// Samples-to-identify and chart counts across a grid of t. Trial i of every
/// grid point uses seed + i, so the hidden vectors and streams are shared.
inline std::vector<BenchRow> bench_tradeoff(const BenchConfig& cfg) {
    cfg.validate();
    std::vector<BenchRow> rows;
    for (auto t : cfg.t_grid) {
        BenchRow row;
        row.t = t;
        row.T = cfg.alpha * t;
        row.family_m = static_cast<std::uint64_t>(family_size_m({cfg.n, cfg.k, t, cfg.alpha}));
        const std::size_t cap = cfg.max_samples != 0 ? cfg.max_samples : default_max_samples(cfg.n, cfg.k, t);
        double ns = 0;
        std::size_t rounds = 0;
        for (std::size_t i = 0; i < cfg.common.trials; ++i) {
            const TrialSeeds seeds(cfg.common.seed + i);
            const auto hidden = gen_hidden(cfg.n, cfg.k, seeds.hidden);
            auto source = ExampleSource::uniform(hidden, seeds.stream);
            auto learner = OnlineLearner::create(cfg.n, cfg.k, t, cfg.alpha, seeds.learner);
            row.charts_per_trial.push_back(learner.charts().size());
            const auto start = std::chrono::steady_clock::now();
            const auto samples = feed_until_identified(learner, source, cap);
            ns += static_cast<double>(detail::elapsed_ns(start));
            rounds += samples;
            const auto status = learner.status();
            row.mean_charts += static_cast<double>(row.charts_per_trial.back());
            row.mean_samples += static_cast<double>(samples);
            row.mean_mistakes += static_cast<double>(learner.mistakes());
            row.identified_fraction +=
                is_identified(status) && std::get<Identified>(status).hypothesis == hidden ? 1.0 : 0.0;
        }
        const double trials = static_cast<double>(cfg.common.trials);
        row.mean_charts /= trials;
        row.mean_samples /= trials;
        row.mean_mistakes /= trials;
        row.identified_fraction /= trials;
        row.mean_round_ns = rounds == 0 ? 0.0 : ns / static_cast<double>(rounds);
        if (!rows.empty() && cfg.k > 0 && row.mean_charts > 0)
            row.rate_log2_per_k = std::log2(rows.back().mean_charts / row.mean_charts) / static_cast<double>(cfg.k);
        rows.push_back(std::move(row));
    }
    return rows;
}

inline void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
    os << bench_csv_header << '\n';
    for (const auto& r : rows) {
        os << r.t << ',' << r.T << ',' << r.family_m << ',' << detail::fmt_double(r.mean_charts) << ','
           << detail::fmt_double(r.mean_samples) << ',' << detail::fmt_double(r.mean_mistakes) << ','
           << detail::fmt_double(r.identified_fraction) << ',' << detail::cell(r.rate_log2_per_k) << ','
           << detail::fmt_double(r.mean_round_ns) << '\n';
    }
}

inline Json bench_json(const std::vector<BenchRow>& rows) {
    Json arr = Json::array();
    for (const auto& r : rows) {
        arr.push_back(Json{{"t", r.t},
                           {"T", r.T},
                           {"family_m", r.family_m},
                           {"mean_charts", std::round(r.mean_charts * 1e6) / 1e6},
                           {"mean_samples", std::round(r.mean_samples * 1e6) / 1e6},
                           {"mean_mistakes", std::round(r.mean_mistakes * 1e6) / 1e6},
                           {"identified_fraction", std::round(r.identified_fraction * 1e6) / 1e6},
                           {"rate_log2_per_k", detail::json_cell(r.rate_log2_per_k)},
                           {"mean_round_ns", std::round(r.mean_round_ns * 1e6) / 1e6}});
    }
    return Json{{"command", "bench"}, {"rows", std::move(arr)}};
}

} // namespace sparity::harness
