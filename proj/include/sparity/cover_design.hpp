#pragma once

#include <sparity/combinatorics.hpp>
#include <sparity/errors.hpp>
#include <sparity/rng.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sparity {

/// n: ambient dimension, k: sparsity, t: tradeoff parameter, alpha: blow-up
/// factor. The partition has T = alpha * t parts and each random subset picks
/// alpha * k of them.
struct CoverParams {
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t t = 0;
    std::size_t alpha = 2;

    std::size_t parts() const noexcept { return alpha * t; }
    std::size_t subset_size() const noexcept { return alpha * k; }
    std::size_t max_part_size() const noexcept { return parts() == 0 ? 0 : (n + parts() - 1) / parts(); }

    void validate() const {
        require(alpha >= 2, "cover params: alpha must be at least 2");
        require(k <= t, "cover params: need k <= t");
        require(t >= 1, "cover params: need t >= 1");
        require(t <= n, "cover params: need t <= n");
        require(parts() <= n, "cover params: need alpha * t <= n");
    }

    friend bool operator==(const CoverParams&, const CoverParams&) = default;
};

/// C(T, alpha k) / C(T - k, alpha k - k) as an exact fraction.
struct BinomRatio {
    BigInt numerator;
    BigInt denominator;
};

inline BinomRatio cover_ratio(std::size_t T, std::size_t k, std::size_t block) {
    require(k <= block && block <= T, "cover_ratio: need k <= alpha k <= T");
    return {binom(T, block), binom(T - k, block - k)};
}

/// m = ceil(2 * C(T,αk)/C(T-k,αk-k) * ln C(T,k)), at least 1.
inline BigInt family_size_m(const CoverParams& p) {
    p.validate();
    const auto [num, den] = cover_ratio(p.parts(), p.k, p.subset_size());
    const BigInt pairs = binom(p.parts(), p.k);
    if (pairs <= 1) return 1;
    const BigFloat m = 2 * BigFloat(num) / BigFloat(den) * ln_big(pairs);
    BigInt out = static_cast<BigInt>(boost::multiprecision::ceil(m));
    return out < 1 ? BigInt(1) : out;
}

/// Partition of [n] into T parts plus m alpha*k-subsets of [T].
struct CoverFamily {
    CoverParams params;
    std::uint64_t seed = 0;
    std::vector<std::vector<std::size_t>> parts;
    std::vector<std::vector<std::size_t>> subsets;
    bool verified = false;

    /// Sorted union of the parts named by subsets[i].
    std::vector<std::size_t> support(std::size_t i) const {
        std::vector<std::size_t> out;
        for (auto j : subsets.at(i)) out.insert(out.end(), parts[j].begin(), parts[j].end());
        std::sort(out.begin(), out.end());
        return out;
    }
};

/// Index i goes to part i mod T.
inline std::vector<std::vector<std::size_t>> round_robin_partition(std::size_t n, std::size_t parts) {
    std::vector<std::vector<std::size_t>> out(parts);
    for (std::size_t i = 0; i < n; ++i) out[i % parts].push_back(i);
    return out;
}

inline constexpr std::uint64_t default_max_family_size = 10'000'000;

inline CoverFamily sample_family(const CoverParams& p, std::uint64_t seed,
                                 std::uint64_t max_family_size = default_max_family_size) {
    p.validate();
    const BigInt m = family_size_m(p);
    if (m > max_family_size)
        throw budget_exceeded("sample_family: m = " + m.str() + " exceeds the family size limit");
    CoverFamily f;
    f.params = p;
    f.seed = seed;
    f.parts = round_robin_partition(p.n, p.parts());
    Rng rng(seed);
    const auto count = static_cast<std::size_t>(m);
    f.subsets.reserve(count);
    for (std::size_t i = 0; i < count; ++i) f.subsets.push_back(rng.subset(p.parts(), p.subset_size()));
    return f;
}

inline constexpr std::uint64_t default_cover_budget = 1'000'000;

struct CoverVerification {
    CoverFamily family;
    /// First uncovered k-subset in lexicographic order, if any.
    std::optional<std::vector<std::size_t>> witness;
};

/// Checks every k-subset of [T] against the family.
inline CoverVerification verify_cover(CoverFamily family, std::uint64_t budget = default_cover_budget) {
    const std::size_t T = family.params.parts();
    const std::size_t k = family.params.k;
    if (binom(T, k) > budget)
        throw budget_exceeded("verify_cover: C(" + std::to_string(T) + ", " + std::to_string(k) +
                              ") exceeds the enumeration budget");

    const std::size_t words = (T + 63) / 64;
    std::vector<std::uint64_t> masks(family.subsets.size() * words, 0);
    for (std::size_t i = 0; i < family.subsets.size(); ++i)
        for (auto j : family.subsets[i]) masks[i * words + j / 64] |= std::uint64_t{1} << (j % 64);

    std::vector<std::uint64_t> a(words);
    std::optional<std::vector<std::size_t>> witness;
    for_each_combination(T, k, [&](const std::vector<std::size_t>& subset) {
        std::fill(a.begin(), a.end(), 0);
        for (auto j : subset) a[j / 64] |= std::uint64_t{1} << (j % 64);
        for (std::size_t i = 0; i < family.subsets.size(); ++i) {
            bool inside = true;
            for (std::size_t w = 0; w < words && inside; ++w) inside = (a[w] & ~masks[i * words + w]) == 0;
            if (inside) return true;
        }
        witness = subset;
        return false;
    });
    family.verified = !witness;
    return {std::move(family), std::move(witness)};
}

struct CertifiedFamily {
    CoverFamily family;
    std::size_t attempts = 0;
    /// Set when the family could not be certified; the family is still usable.
    std::optional<std::string> warning;
};

/// Resamples with derived seeds until verify_cover passes. Attempt 0 uses
/// `seed`, attempt j > 0 uses Rng(seed).fork(j).seed(). Above the enumeration
/// budget the first sample is returned unverified with a warning.
inline CertifiedFamily certified_family(const CoverParams& p, std::uint64_t seed,
                                        std::uint64_t budget = default_cover_budget,
                                        std::size_t max_attempts = 10) {
    p.validate();
    CertifiedFamily out;
    if (binom(p.parts(), p.k) > budget) {
        out.family = sample_family(p, seed);
        out.attempts = 1;
        out.warning = "cover family used unverified: C(T, k) exceeds the enumeration budget";
        return out;
    }
    const Rng root(seed);
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        const std::uint64_t s = attempt == 0 ? seed : root.fork(attempt).seed();
        auto check = verify_cover(sample_family(p, s), budget);
        out.family = std::move(check.family);
        out.attempts = attempt + 1;
        if (!check.witness) {
            out.warning.reset();
            return out;
        }
        out.warning = "cover family not certified after " + std::to_string(out.attempts) + " attempts";
    }
    return out;
}

/// Finite-size check of C(T,αk)/C(T-k,αk-k) <= e^{-k/4.01} C(t,k).
struct RatioBoundReport {
    double ratio_log2 = 0;     ///< log2 of the exact binomial ratio
    double rhs_log2 = 0;       ///< log2(e^{-k/4.01} * C(t,k))
    double trivial_log2 = 0;   ///< log2 C(t,k)
    bool holds = false;        ///< ratio <= e^{-k/4.01} C(t,k), compared at 50 digits
    bool below_trivial = false; ///< ratio < C(t,k), compared exactly

    double margin_log2() const { return rhs_log2 - ratio_log2; }
};

inline RatioBoundReport ratio_bound_report(std::size_t t, std::size_t k, std::size_t alpha) {
    const std::size_t T = alpha * t;
    require(alpha * k <= T, "ratio_bound_report: need alpha k <= alpha t");
    const auto [num, den] = cover_ratio(T, k, alpha * k);
    const BigInt trivial = binom(t, k);

    const BigFloat lhs = log2_big(num) - log2_big(den);
    const BigFloat rhs = log2_big(trivial) -
                         BigFloat(k) / (BigFloat("4.01") * boost::multiprecision::log(BigFloat(2)));
    RatioBoundReport r;
    r.ratio_log2 = static_cast<double>(lhs);
    r.rhs_log2 = static_cast<double>(rhs);
    r.trivial_log2 = static_cast<double>(log2_big(trivial));
    r.holds = lhs <= rhs;
    r.below_trivial = num < trivial * den;
    return r;
}

} // namespace sparity
