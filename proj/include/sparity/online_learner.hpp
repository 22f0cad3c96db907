#pragma once

#include <sparity/affine_space.hpp>
#include <sparity/bit_vector.hpp>
#include <sparity/combinatorics.hpp>
#include <sparity/cover_design.hpp>
#include <sparity/errors.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace sparity {

/// One candidate region: the hidden vector restricted to `support`, with
/// `space` holding the points still consistent with every example seen.
struct SubspaceChart {
    std::vector<std::size_t> support;
    AffineSpace space;

    /// Places a local point (length |support|) into GF(2)^n.
    BitVector embed(const BitVector& local, std::size_t n) const { return local.scatter(support, n); }
};

struct Identified {
    BitVector hypothesis;
};

struct Active {
    double log2_mass_upper = 0;
    std::size_t mistakes = 0;
};

using LearnerStatus = std::variant<Identified, Active>;

inline bool is_identified(const LearnerStatus& s) { return std::holds_alternative<Identified>(s); }

struct LearnerOptions {
    std::uint64_t cover_budget = default_cover_budget;
    std::size_t max_reseeds = 10;
};

/// Exact Σ 2^e over a multiset of exponents, kept as per-exponent counts.
class MassTally {
public:
    void add(std::size_t exponent, std::uint64_t count = 1) {
        if (counts_.size() <= exponent) counts_.resize(exponent + 1, 0);
        counts_[exponent] += count;
    }

    BigInt value() const {
        BigInt total = 0;
        for (std::size_t e = 0; e < counts_.size(); ++e)
            if (counts_[e] != 0) total += BigInt(counts_[e]) << e;
        return total;
    }

private:
    std::vector<std::uint64_t> counts_;
};

/// Mistake-bound learner for weight-k parities over a random cover family.
///
/// Each chart covers the coordinates of alpha*k partition blocks. A prediction
/// takes the label whose surviving mass (summed sizes of the restricted affine
/// spaces) is larger, ties going to 0, so a wrong prediction at least halves
/// the total mass. Every update intersects each chart with the new constraint
/// and drops charts that become empty.
class OnlineLearner {
public:
    static OnlineLearner create(std::size_t n, std::size_t k, std::size_t t, std::size_t alpha, std::uint64_t seed,
                                LearnerOptions opts = {}) {
        const CoverParams p{n, k, t, alpha};
        p.validate();
        auto certified = certified_family(p, seed, opts.cover_budget, opts.max_reseeds);
        return OnlineLearner(certified.family, std::move(certified.warning));
    }

    explicit OnlineLearner(const CoverFamily& family, std::optional<std::string> cover_warning = std::nullopt)
        : n_(family.params.n), k_(family.params.k), cover_warning_(std::move(cover_warning)) {
        std::set<std::vector<std::size_t>> seen;
        for (std::size_t i = 0; i < family.subsets.size(); ++i) {
            if (!seen.insert(family.subsets[i]).second) continue;
            auto support = family.support(i);
            const std::size_t dim = support.size();
            charts_.push_back({std::move(support), AffineSpace(dim)});
        }
        require(!charts_.empty(), "OnlineLearner: cover family has no subsets");
        mass_history_.push_back(total_mass());
    }

    std::size_t n() const noexcept { return n_; }
    std::size_t k() const noexcept { return k_; }
    const std::vector<SubspaceChart>& charts() const noexcept { return charts_; }
    std::size_t mistakes() const noexcept { return mistakes_; }
    const std::vector<BigInt>& mass_history() const noexcept { return mass_history_; }
    const BigInt& initial_mass() const { return mass_history_.front(); }
    const std::optional<std::string>& cover_warning() const noexcept { return cover_warning_; }
    const OpCount& last_round_ops() const noexcept { return last_ops_; }

    /// ⌊log2 of the initial total mass⌋: no honest stream can cause more mistakes.
    std::size_t mistake_bound() const { return floor_log2(initial_mass()); }

    BigInt total_mass() const {
        MassTally tally;
        for (const auto& c : charts_) tally.add(*c.space.log2_size());
        return tally.value();
    }

    /// Exact masses {label 0, label 1} the example would leave behind.
    std::pair<BigInt, BigInt> label_masses(const BitVector& a) const {
        require(a.size() == n_, "predict: example length must equal n");
        MassTally zero, one;
        for (const auto& c : charts_) {
            const auto split = c.space.split_sizes(a.gather(c.support));
            if (split.log2_size_y0) zero.add(*split.log2_size_y0);
            if (split.log2_size_y1) one.add(*split.log2_size_y1);
        }
        return {zero.value(), one.value()};
    }

    bool predict(const BitVector& a) const {
        auto [zero, one] = label_masses(a);
        if (zero == 0 && one == 0) throw inconsistent_stream("predict: all charts are empty");
        return one > zero;
    }

    /// Intersects every chart with <a, f> = y. Throws inconsistent_stream, leaving
    /// the learner untouched, when no chart survives.
    void update(const BitVector& a, bool y) {
        require(a.size() == n_, "update: example length must equal n");
        OpCount ops;
        std::vector<SubspaceChart> next;
        next.reserve(charts_.size());
        for (const auto& c : charts_) {
            auto space = c.space.constrain(a.gather(c.support), y, &ops);
            if (!space.is_empty()) next.push_back({c.support, std::move(space)});
        }
        if (next.empty()) throw inconsistent_stream("update: every chart became empty");
        charts_ = std::move(next);
        last_ops_ = ops;
        mass_history_.push_back(total_mass());
    }

    /// One protocol round: predict, count a mistake if wrong, then update.
    /// Returns true when the prediction was wrong.
    bool observe(const BitVector& a, bool y) {
        const bool mistake = predict(a) != y;
        if (mistake) ++mistakes_;
        update(a, y);
        return mistake;
    }

    LearnerStatus status() const {
        std::optional<BitVector> point;
        bool singleton = true;
        for (const auto& c : charts_) {
            if (c.space.rank() != c.space.ambient_dim()) {
                singleton = false;
                break;
            }
            auto p = c.embed(c.space.sole_point(), n_);
            if (point && *point != p) {
                singleton = false;
                break;
            }
            point = std::move(p);
        }
        if (singleton && point) return Identified{std::move(*point)};
        return Active{static_cast<double>(log2_big(total_mass())), mistakes_};
    }

    /// A point consistent with every example so far (the first chart's point
    /// with free coordinates zero).
    BitVector representative() const { return charts_.front().embed(charts_.front().space.particular_point(), n_); }

private:
    std::size_t n_ = 0;
    std::size_t k_ = 0;
    std::vector<SubspaceChart> charts_;
    std::size_t mistakes_ = 0;
    std::vector<BigInt> mass_history_;
    std::optional<std::string> cover_warning_;
    OpCount last_ops_;
};

} // namespace sparity
