#pragma once

#include <sparity/bit_vector.hpp>
#include <sparity/errors.hpp>
#include <sparity/online_learner.hpp>
#include <sparity/oracles.hpp>

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <variant>

namespace sparity {

/// Anything that can play the online mistake-bound protocol.
template <class L>
concept MistakeBoundLearner = requires(L& learner, const L& view, const BitVector& a, bool y) {
    { view.predict(a) } -> std::convertible_to<bool>;
    learner.update(a, y);
    { view.status() } -> std::same_as<LearnerStatus>;
    { view.mistake_bound() } -> std::convertible_to<std::size_t>;
    { view.representative() } -> std::convertible_to<BitVector>;
};

template <class S>
concept LabeledExampleSource = requires(S& source) {
    { source.next() } -> std::same_as<LabeledExample>;
};

struct PacParams {
    double epsilon = 0.5;
    double delta = 0.1;
    std::size_t sample_budget = 1'000'000;

    void validate() const {
        require(epsilon > 0.0 && epsilon <= 1.0, "pac params: epsilon must lie in (0, 1]");
        require(delta > 0.0 && delta < 1.0, "pac params: delta must lie in (0, 1)");
    }
};

/// Length of a mistake-free run that certifies the current predictor: a
/// predictor with error >= epsilon survives r draws with probability at most
/// (1 - epsilon)^r, and at most m + 1 distinct predictors occur.
/// For epsilon = 1/2 this is ceil(log2((m + 1) / delta)).
inline std::size_t survival_threshold(std::size_t mistake_bound, const PacParams& p) {
    p.validate();
    const double need = std::log((static_cast<double>(mistake_bound) + 1.0) / p.delta);
    if (p.epsilon >= 1.0) return 1;
    const double r = need / -std::log1p(-p.epsilon);
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(r - 1e-12)));
}

/// Worst-case draws before pac_learn stops: at most m runs end in a mistake,
/// each no longer than the threshold, plus the final surviving run.
inline std::size_t pac_sample_bound(std::size_t mistake_bound, const PacParams& p) {
    return (mistake_bound + 1) * survival_threshold(mistake_bound, p);
}

enum class PacStatus { identified, survived, budget_exhausted };

struct PacOutcome {
    BitVector hypothesis;
    PacStatus status = PacStatus::budget_exhausted;
    bool certified = false;
    std::size_t samples = 0;
    std::size_t mistakes = 0;
    std::size_t longest_run = 0;
    std::size_t run_threshold = 0;
    std::size_t mistake_bound = 0;
};

/// Runs the online protocol on random examples until the learner identifies
/// the target, or its predictions survive a full run without a mistake, or the
/// sample budget is spent. In the second case the returned hypothesis is the
/// learner's representative point; in the third it is flagged uncertified.
template <MistakeBoundLearner L, LabeledExampleSource S>
PacOutcome pac_learn(L& learner, S& source, const PacParams& params) {
    params.validate();
    PacOutcome out;
    out.mistake_bound = learner.mistake_bound();
    out.run_threshold = survival_threshold(out.mistake_bound, params);
    std::size_t run = 0;
    for (;;) {
        auto status = learner.status();
        if (auto* id = std::get_if<Identified>(&status)) {
            out.hypothesis = std::move(id->hypothesis);
            out.status = PacStatus::identified;
            out.certified = true;
            return out;
        }
        if (run >= out.run_threshold) {
            out.hypothesis = learner.representative();
            out.status = PacStatus::survived;
            out.certified = true;
            return out;
        }
        if (out.samples >= params.sample_budget) {
            out.hypothesis = learner.representative();
            out.status = PacStatus::budget_exhausted;
            out.certified = false;
            return out;
        }
        auto ex = source.next();
        ++out.samples;
        if (static_cast<bool>(learner.predict(ex.a)) != ex.label) {
            ++out.mistakes;
            run = 0;
        } else {
            out.longest_run = std::max(out.longest_run, ++run);
        }
        learner.update(ex.a, ex.label);
    }
}

} // namespace sparity
