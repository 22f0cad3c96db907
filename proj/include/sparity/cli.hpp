#pragma once

#include <sparity/errors.hpp>
#include <sparity/harness.hpp>
#include <sparity/oracles.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace sparity::harness {

inline constexpr int exit_ok = 0;
inline constexpr int exit_contract = 1;
inline constexpr int exit_io = 2;

namespace detail {

inline void add_common(CLI::App& cmd, CommonOptions& c) {
    cmd.add_option("--seed", c.seed, "root seed; trial i uses seed + i")->capture_default_str();
    cmd.add_option("--trials", c.trials, "number of trials")->capture_default_str();
    cmd.add_option("--format", c.format, "report format: csv or json")
        ->transform(CLI::CheckedTransformer(std::map<std::string, ReportFormat>{{"csv", ReportFormat::csv},
                                                                                {"json", ReportFormat::json}}));
    cmd.add_option("--out", c.out, "report path (default: standard output)");
}

/// Writes `body` to `path`, or to `fallback` when path is empty.
inline void emit(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& body) {
    if (path.empty()) {
        body(fallback);
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw io_error("cannot write " + path);
    body(f);
    f.flush();
    if (!f) throw io_error("write failed: " + path);
}

inline void emit_trials(const CommonOptions& c, const std::string& command, const std::vector<TrialRow>& rows,
                        std::ostream& out) {
    emit(c.out, out, [&](std::ostream& os) {
        if (c.format == ReportFormat::csv)
            write_trials_csv(os, rows);
        else
            os << trials_json(command, rows).dump(2) << '\n';
    });
}

} // namespace detail

/// Entry point of the `sparity` tool. `args` excludes the program name.
/// Exit codes: 0 success, 1 usage error or contract violation, 2 I/O error.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
    CLI::App app{"Sparse parity learning: mistake-bound learner, baselines and the noisy-to-noiseless reduction",
                 "sparity"};
    app.require_subcommand(1);

    NoiselessConfig noiseless;
    std::string stream_path, save_stream_path;
    auto* learn = app.add_subcommand("learn-noiseless", "learn hidden weight-k parities from honest uniform examples");
    detail::add_common(*learn, noiseless.common);
    learn->add_option("--n", noiseless.n, "ambient dimension")->capture_default_str();
    learn->add_option("--k", noiseless.k, "hidden weight")->capture_default_str();
    learn->add_option("--t", noiseless.t, "tradeoff parameter")->capture_default_str();
    learn->add_option("--alpha", noiseless.alpha, "cover blow-up factor")->capture_default_str();
    learn->add_option("--learner", noiseless.learner, "online or halving")->capture_default_str();
    learn->add_option("--max-samples", noiseless.max_samples, "example cap per trial (0: ceil(4 * (kn/t + log2 C(t,k))))");
    learn->add_option("--cover-budget", noiseless.cover_budget, "cover verification budget")->capture_default_str();
    learn->add_option("--stream", stream_path, "replay examples from a stream file instead of sampling");
    learn->add_option("--save-stream", save_stream_path, "write the examples seen by the first trial to a file");

    NoisyConfig noisy;
    std::size_t s_prime = 0, s_doubleprime = 0;
    auto* lnoisy = app.add_subcommand("learn-noisy", "solve k-LPN by the flip-set reduction");
    detail::add_common(*lnoisy, noisy.common);
    lnoisy->add_option("--n", noisy.n, "ambient dimension")->capture_default_str();
    lnoisy->add_option("--k", noisy.k, "hidden weight")->capture_default_str();
    lnoisy->add_option("--eta", noisy.eta, "noise rate in (0, 1/3), assumed known")->capture_default_str();
    lnoisy->add_option("--delta", noisy.delta, "confidence parameter")->capture_default_str();
    lnoisy->add_option("--inner", noisy.inner, "inner learner: mitm or pac-online")->capture_default_str();
    lnoisy->add_option("--t", noisy.t, "tradeoff parameter (pac-online)");
    lnoisy->add_option("--alpha", noisy.alpha, "cover blow-up factor (pac-online)")->capture_default_str();
    lnoisy->add_option("--flip-set-budget", noisy.flip_set_budget, "maximum flip sets to enumerate")
        ->capture_default_str();
    lnoisy->add_option("--s-prime", s_prime, "override the derived s'");
    lnoisy->add_option("--s-doubleprime", s_doubleprime, "override the derived s''");

    CoverCheckConfig cover;
    std::string cover_format = "json";
    auto* cc = app.add_subcommand("cover-check", "sample a cover family and verify it exhaustively");
    cc->add_option("--n", cover.params.n, "ambient dimension")->required();
    cc->add_option("--k", cover.params.k, "hidden weight")->required();
    cc->add_option("--t", cover.params.t, "tradeoff parameter")->required();
    cc->add_option("--alpha", cover.params.alpha, "cover blow-up factor")->capture_default_str();
    cc->add_option("--seed", cover.seed, "family seed")->capture_default_str();
    cc->add_option("--budget", cover.budget, "enumeration budget for C(T, k)")->capture_default_str();
    cc->add_option("--format", cover_format, "report format (json only)")->check(CLI::IsMember({"json"}));
    cc->add_option("--out", cover.out, "report path (default: standard output)");

    BenchConfig bench;
    auto* bn = app.add_subcommand("bench", "samples and chart counts across a grid of t");
    detail::add_common(*bn, bench.common);
    bench.common.trials = 20;
    bn->add_option("--n", bench.n, "ambient dimension")->capture_default_str();
    bn->add_option("--k", bench.k, "hidden weight")->capture_default_str();
    bn->add_option("--t-grid", bench.t_grid, "comma-separated t values")->delimiter(',')->capture_default_str();
    bn->add_option("--alpha", bench.alpha, "cover blow-up factor")->capture_default_str();
    bn->add_option("--max-samples", bench.max_samples, "example cap per trial (0: ceil(4 * (kn/t + log2 C(t,k))))");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n\n" << app.help();
        return exit_contract;
    }

    try {
        if (*learn) {
            if (!stream_path.empty()) {
                const auto stream = load_examples(stream_path);
                std::optional<BitVector> hypothesis;
                const auto row = replay_noiseless(noiseless, stream, &hypothesis);
                detail::emit_trials(noiseless.common, "learn-noiseless", {row}, out);
                if (hypothesis) err << "identified " << hypothesis->to_string() << '\n';
                return exit_ok;
            }
            noiseless.validate();
            std::vector<TrialRow> rows;
            std::vector<LabeledExample> recorded;
            for (std::size_t i = 0; i < noiseless.common.trials; ++i)
                rows.push_back(run_noiseless_trial(noiseless, noiseless.common.seed + i,
                                                   i == 0 && !save_stream_path.empty() ? &recorded : nullptr));
            if (!save_stream_path.empty()) save_examples(save_stream_path, recorded);
            detail::emit_trials(noiseless.common, "learn-noiseless", rows, out);
        } else if (*lnoisy) {
            if (s_prime != 0) noisy.s_prime = s_prime;
            if (s_doubleprime != 0) noisy.s_doubleprime = s_doubleprime;
            const auto rows = run_noisy(noisy);
            detail::emit_trials(noisy.common, "learn-noisy", rows, out);
        } else if (*cc) {
            const auto check = cover_check(cover);
            auto doc = cover_family_json(check.family);
            detail::emit(cover.out, out, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
            if (check.witness) {
                err << "uncovered k-subset:";
                for (auto j : *check.witness) err << ' ' << j;
                err << '\n';
            }
        } else if (*bn) {
            const auto rows = bench_tradeoff(bench);
            detail::emit(bench.common.out, out, [&](std::ostream& os) {
                if (bench.common.format == ReportFormat::csv)
                    write_bench_csv(os, rows);
                else
                    os << bench_json(rows).dump(2) << '\n';
            });
        }
    } catch (const io_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_io;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_contract;
    }
    return exit_ok;
}

} // namespace sparity::harness
