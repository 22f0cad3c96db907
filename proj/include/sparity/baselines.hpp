#pragma once

#include <sparity/affine_space.hpp>
#include <sparity/bit_vector.hpp>
#include <sparity/combinatorics.hpp>
#include <sparity/errors.hpp>
#include <sparity/online_learner.hpp>
#include <sparity/oracles.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <unordered_map>
#include <variant>
#include <vector>

namespace sparity {

// ---------------------------------------------------------------------------
// Gaussian elimination over all n coordinates

struct UniqueSolution {
    BitVector f;
};
struct Underdetermined {
    std::size_t rank = 0;
};
struct Inconsistent {};

using GaussResult = std::variant<UniqueSolution, Underdetermined, Inconsistent>;

inline GaussResult gauss_learn(std::span<const LabeledExample> examples, std::size_t n) {
    AffineSpace space(n);
    for (const auto& e : examples) {
        require(e.a.size() == n, "gauss_learn: example length must equal n");
        space.constrain_in_place(e.a, e.label);
        if (space.is_empty()) return Inconsistent{};
    }
    if (space.rank() == n) return UniqueSolution{space.sole_point()};
    return Underdetermined{space.rank()};
}

// ---------------------------------------------------------------------------
// Halving over an explicit list of weight-k candidates

inline constexpr std::uint64_t default_candidate_budget = 1'000'000;

class HalvingLearner {
public:
    HalvingLearner(std::size_t n, std::size_t k, std::uint64_t budget = default_candidate_budget) : n_(n), k_(k) {
        require(k <= n, "HalvingLearner: need k <= n");
        const BigInt total = binom(n, k);
        if (total > budget) throw budget_exceeded("HalvingLearner: C(n, k) exceeds the candidate budget");
        survivors_.reserve(static_cast<std::size_t>(total));
        for_each_combination(n, k, [&](const std::vector<std::size_t>& s) {
            survivors_.push_back(BitVector::from_support(n, s));
        });
        mistake_bound_ = floor_log2(total);
    }

    std::size_t n() const noexcept { return n_; }
    std::size_t k() const noexcept { return k_; }
    const std::vector<BitVector>& survivors() const noexcept { return survivors_; }
    std::size_t mistakes() const noexcept { return mistakes_; }
    std::size_t mistake_bound() const noexcept { return mistake_bound_; }

    bool predict(const BitVector& a) const {
        require(a.size() == n_, "predict: example length must equal n");
        std::size_t ones = 0;
        for (const auto& f : survivors_) ones += dot(f, a);
        return 2 * ones > survivors_.size();
    }

    void update(const BitVector& a, bool y) {
        require(a.size() == n_, "update: example length must equal n");
        std::vector<BitVector> next;
        for (const auto& f : survivors_)
            if (dot(f, a) == y) next.push_back(f);
        if (next.empty()) throw inconsistent_stream("halving: no candidate is consistent");
        survivors_ = std::move(next);
    }

    bool observe(const BitVector& a, bool y) {
        const bool mistake = predict(a) != y;
        if (mistake) ++mistakes_;
        update(a, y);
        return mistake;
    }

    LearnerStatus status() const {
        if (survivors_.size() == 1) return Identified{survivors_.front()};
        return Active{std::log2(static_cast<double>(survivors_.size())), mistakes_};
    }

    BitVector representative() const { return survivors_.front(); }

private:
    std::size_t n_;
    std::size_t k_;
    std::vector<BitVector> survivors_;
    std::size_t mistakes_ = 0;
    std::size_t mistake_bound_ = 0;
};

// ---------------------------------------------------------------------------
// Meet in the middle

/// Every weight-k vector consistent with the examples, sorted.
///
/// Each weight-k support W is written as U ∪ V with |U| = ceil(k/2) and
/// |V| = floor(k/2). U is tabled under the syndrome labels ⊕ Σ_{j∈U} column_j,
/// V probes with Σ_{j∈V} column_j, and a hit with U ∩ V = ∅ means W is
/// consistent. Both halves range over all of [n], so W is found once per
/// ordered split and duplicates are merged.
inline std::vector<BitVector> mitm_learn(std::span<const LabeledExample> examples, std::size_t n, std::size_t k) {
    require(k <= n, "mitm_learn: need k <= n");
    const std::size_t s = examples.size();
    std::vector<BitVector> columns(n, BitVector(s));
    BitVector labels(s);
    for (std::size_t i = 0; i < s; ++i) {
        require(examples[i].a.size() == n, "mitm_learn: example length must equal n");
        for (auto j : examples[i].a.support()) columns[j].set(i);
        if (examples[i].label) labels.set(i);
    }
    const std::size_t left_k = (k + 1) / 2;
    const std::size_t right_k = k / 2;

    std::vector<std::vector<std::size_t>> left;
    std::unordered_map<BitVector, std::vector<std::size_t>, BitVectorHash> table;
    for_each_combination(n, left_k, [&](const std::vector<std::size_t>& u) {
        BitVector syndrome = labels;
        for (auto j : u) syndrome ^= columns[j];
        table[std::move(syndrome)].push_back(left.size());
        left.push_back(u);
    });

    std::set<BitVector> found;
    for_each_combination(n, right_k, [&](const std::vector<std::size_t>& v) {
        BitVector syndrome(s);
        for (auto j : v) syndrome ^= columns[j];
        auto hit = table.find(syndrome);
        if (hit == table.end()) return;
        for (auto idx : hit->second) {
            const auto& u = left[idx];
            bool disjoint = true;
            for (auto j : v) disjoint = disjoint && !std::binary_search(u.begin(), u.end(), j);
            if (!disjoint) continue;
            BitVector w = BitVector::from_support(n, u);
            for (auto j : v) w.set(j);
            found.insert(std::move(w));
        }
    });
    return {found.begin(), found.end()};
}

} // namespace sparity
