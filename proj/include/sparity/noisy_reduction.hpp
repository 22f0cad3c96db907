#pragma once

#include <sparity/baselines.hpp>
#include <sparity/bit_vector.hpp>
#include <sparity/combinatorics.hpp>
#include <sparity/errors.hpp>
#include <sparity/mb_to_pac.hpp>
#include <sparity/online_learner.hpp>
#include <sparity/oracles.hpp>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sparity {

/// Binary entropy in bits, with H(0) = H(1) = 0.
inline double entropy(double p) {
    require(p >= 0.0 && p <= 1.0, "entropy: p must lie in [0, 1]");
    if (p == 0.0 || p == 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

namespace detail {
// Sample-size formulas are evaluated in floating point; absorb representation
// error so that e.g. 1.5 * 0.02 * 100 floors to 3, not 2.
inline std::size_t ceil_count(double x) { return static_cast<std::size_t>(std::ceil(x - 1e-9)); }
inline std::size_t floor_count(double x) { return static_cast<std::size_t>(std::floor(x + 1e-9)); }
} // namespace detail

/// Subsets of {0..s'-1} of size at most `budget`: by size, lexicographic
/// within a size, starting from the empty set.
class FlipSetIterator {
public:
    FlipSetIterator(std::size_t s_prime, std::size_t budget) : s_prime_(s_prime), budget_(budget), combo_(s_prime, 0) {
        require(budget <= s_prime, "FlipSetIterator: budget must not exceed s'");
    }

    /// Σ_{i=0}^{budget} C(s', i).
    static BigInt count(std::size_t s_prime, std::size_t budget) { return binom_prefix_sum(s_prime, budget); }

    const std::vector<std::size_t>& current() const noexcept { return combo_.current(); }

    bool next() {
        if (combo_.next()) return true;
        const std::size_t size = combo_.current().size();
        if (size >= budget_) return false;
        combo_ = Combinations(s_prime_, size + 1);
        return true;
    }

private:
    std::size_t s_prime_;
    std::size_t budget_;
    Combinations combo_;
};

/// Sample sizes for the noisy-to-noiseless reduction.
///
///     s'  = ceil(20 * s(delta/2) * log2(1/delta))
///     s'' = ceil(600 * (s' * H(3 eta / 2) + log2(8/delta)))
///     flip_budget = floor(3/2 * eta * s')
struct NoisyParams {
    double eta = 0.0;
    double delta = 0.1;
    std::size_t s_prime = 0;
    std::size_t s_doubleprime = 0;
    std::size_t flip_budget = 0;

    /// `inner_samples` is the inner learner's declared s(delta/2).
    static NoisyParams derive(double eta, double delta, std::size_t inner_samples) {
        require(eta > 0.0 && eta < 1.0 / 3.0, "noisy params: eta must lie in (0, 1/3)");
        require(delta > 0.0 && delta < 1.0, "noisy params: delta must lie in (0, 1)");
        NoisyParams p;
        p.eta = eta;
        p.delta = delta;
        p.s_prime = detail::ceil_count(20.0 * static_cast<double>(inner_samples) * std::log2(1.0 / delta));
        p.s_doubleprime = detail::ceil_count(
            600.0 * (static_cast<double>(p.s_prime) * entropy(1.5 * eta) + std::log2(8.0 / delta)));
        p.flip_budget = detail::floor_count(1.5 * eta * static_cast<double>(p.s_prime));
        return p;
    }

    /// Explicit sample sizes, for experiments below the derived sizes.
    static NoisyParams with_counts(double eta, double delta, std::size_t s_prime, std::size_t s_doubleprime) {
        require(eta > 0.0 && eta < 1.0 / 3.0, "noisy params: eta must lie in (0, 1/3)");
        require(delta > 0.0 && delta < 1.0, "noisy params: delta must lie in (0, 1)");
        NoisyParams p;
        p.eta = eta;
        p.delta = delta;
        p.s_prime = s_prime;
        p.s_doubleprime = s_doubleprime;
        p.flip_budget = detail::floor_count(1.5 * eta * static_cast<double>(s_prime));
        return p;
    }

    BigInt flip_set_count() const { return FlipSetIterator::count(s_prime, flip_budget); }

    /// 2^{H(3 eta / 2) s'}, the entropy bound on flip_set_count().
    double flip_set_bound_log2() const { return entropy(1.5 * eta) * static_cast<double>(s_prime); }
};

/// A noiseless PAR(k) learner plugged into the reduction: declares its sample
/// complexity s(delta) and maps labelled examples to a weight-k vector or failure.
struct InnerLearner {
    std::string name;
    std::function<std::size_t(double delta)> sample_complexity;
    std::function<std::optional<BitVector>(std::span<const LabeledExample>, double delta)> learn;
};

/// Meet-in-the-middle inner learner. Succeeds when exactly one weight-k vector
/// is consistent. Declares s(delta) = ceil(log2(C(n,k) / delta)): each of the
/// other C(n,k) - 1 candidates survives s uniform examples with probability 2^-s.
inline InnerLearner mitm_inner(std::size_t n, std::size_t k) {
    InnerLearner in;
    in.name = "mitm";
    in.sample_complexity = [n, k](double delta) {
        const double bits = static_cast<double>(log2_big(binom(n, k))) + std::log2(1.0 / delta);
        return std::max<std::size_t>(1, detail::ceil_count(bits));
    };
    in.learn = [n, k](std::span<const LabeledExample> examples, double) -> std::optional<BitVector> {
        auto found = mitm_learn(examples, n, k);
        if (found.size() != 1) return std::nullopt;
        return std::move(found.front());
    };
    return in;
}

namespace detail {
class SpanSource {
public:
    explicit SpanSource(std::span<const LabeledExample> examples) : examples_(examples) {}
    LabeledExample next() {
        if (pos_ >= examples_.size()) throw source_exhausted("span source exhausted");
        return examples_[pos_++];
    }

private:
    std::span<const LabeledExample> examples_;
    std::size_t pos_ = 0;
};
} // namespace detail

/// pac_learn over a copy of `prototype`, run on the given examples only.
/// Declares s(delta) = pac_sample_bound(mistake bound, {1/2, delta}).
inline InnerLearner pac_online_inner(OnlineLearner prototype) {
    InnerLearner in;
    in.name = "pac-online";
    const std::size_t bound = prototype.mistake_bound();
    in.sample_complexity = [bound](double delta) { return pac_sample_bound(bound, PacParams{0.5, delta, 0}); };
    in.learn = [proto = std::move(prototype)](std::span<const LabeledExample> examples,
                                              double delta) -> std::optional<BitVector> {
        OnlineLearner learner = proto;
        detail::SpanSource source(examples);
        try {
            auto out = pac_learn(learner, source, PacParams{0.5, delta, examples.size()});
            if (!out.certified || out.hypothesis.popcount() != proto.k()) return std::nullopt;
            return std::move(out.hypothesis);
        } catch (const inconsistent_stream&) {
            return std::nullopt;
        }
    };
    return in;
}

struct AgreementSelection {
    std::size_t index = 0;
    std::vector<std::size_t> agreements;
};

/// Index of the candidate agreeing with the most verification labels; the
/// lowest index wins ties.
inline AgreementSelection agreement_select(std::span<const BitVector> candidates,
                                           std::span<const LabeledExample> verification) {
    require(!candidates.empty(), "agreement_select: no candidates");
    AgreementSelection out;
    out.agreements.reserve(candidates.size());
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        std::size_t agree = 0;
        for (const auto& e : verification) agree += dot(e.a, candidates[c]) == e.label;
        out.agreements.push_back(agree);
        if (out.agreements[c] > out.agreements[out.index]) out.index = c;
    }
    return out;
}

inline constexpr std::uint64_t default_flip_set_budget = 10'000'000;

struct NoisyOutcome {
    BitVector hypothesis;
    std::uint64_t inner_invocations = 0;
    std::size_t distinct_candidates = 0;
    std::size_t samples_drawn = 0;
    /// Position in flip-set order of the first flip set producing the winner.
    std::uint64_t winning_flip_set = 0;
    std::size_t winner_disagreements = 0;
    /// Fewest disagreements among the losing candidates, if any.
    std::optional<std::size_t> best_impostor_disagreements;
    /// Winner below 5 s''/12 disagreements and every impostor at or above it.
    bool separated = false;
};

/// Reduction from k-LPN to noiseless learning: draw s' examples, run the inner
/// learner once per flip set of size <= flip_budget, then draw s'' fresh
/// examples and return the candidate that agrees with most of them.
///
/// Throws budget_exceeded (before drawing) when the number of flip sets is
/// above `flip_set_budget`, and no_candidates when every flip set fails.
inline NoisyOutcome noisy_learn(const InnerLearner& inner, ExampleSource& source, const NoisyParams& params,
                                std::uint64_t flip_set_budget = default_flip_set_budget) {
    const BigInt flip_sets = params.flip_set_count();
    if (flip_sets > flip_set_budget)
        throw budget_exceeded("noisy_learn: " + flip_sets.str() + " flip sets (s' = " + std::to_string(params.s_prime) +
                              ", budget " + std::to_string(params.flip_budget) + ") exceed the limit of " +
                              std::to_string(flip_set_budget));

    NoisyOutcome out;
    auto examples = source.take(params.s_prime);
    const double inner_delta = params.delta / 2.0;

    std::vector<BitVector> candidates;
    std::vector<std::uint64_t> first_seen;
    std::map<BitVector, std::size_t> index_of;
    FlipSetIterator flips(params.s_prime, params.flip_budget);
    std::uint64_t order = 0;
    do {
        const auto& set = flips.current();
        for (auto i : set) examples[i].label = !examples[i].label;
        auto result = inner.learn(examples, inner_delta);
        for (auto i : set) examples[i].label = !examples[i].label;
        ++out.inner_invocations;
        if (result && index_of.emplace(*result, candidates.size()).second) {
            candidates.push_back(std::move(*result));
            first_seen.push_back(order);
        }
        ++order;
    } while (flips.next());

    if (candidates.empty()) throw no_candidates("noisy_learn: every flip set made the inner learner fail");

    const auto verification = source.take(params.s_doubleprime);
    out.samples_drawn = params.s_prime + params.s_doubleprime;
    const auto pick = agreement_select(candidates, verification);

    out.distinct_candidates = candidates.size();
    out.winning_flip_set = first_seen[pick.index];
    out.winner_disagreements = verification.size() - pick.agreements[pick.index];
    const double cut = 5.0 * static_cast<double>(verification.size()) / 12.0;
    out.separated = static_cast<double>(out.winner_disagreements) < cut;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        if (c == pick.index) continue;
        const std::size_t d = verification.size() - pick.agreements[c];
        if (!out.best_impostor_disagreements || d < *out.best_impostor_disagreements)
            out.best_impostor_disagreements = d;
        out.separated = out.separated && static_cast<double>(d) >= cut;
    }
    out.hypothesis = std::move(candidates[pick.index]);
    return out;
}

} // namespace sparity
