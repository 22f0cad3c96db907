#pragma once

#include <sparity/errors.hpp>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <type_traits>
#include <vector>

namespace sparity {

using BigInt = boost::multiprecision::cpp_int;
using BigFloat = boost::multiprecision::cpp_bin_float_50;

/// Exact C(x, y); zero when y > x.
inline BigInt binom(std::uint64_t x, std::uint64_t y) {
    if (y > x) return 0;
    if (y > x - y) y = x - y;
    BigInt r = 1;
    // r stays an integer: after step i it equals C(x - y + i, i)
    for (std::uint64_t i = 1; i <= y; ++i) {
        r *= x - y + i;
        r /= i;
    }
    return r;
}

/// Σ_{i=0}^{upto} C(x, i).
inline BigInt binom_prefix_sum(std::uint64_t x, std::uint64_t upto) {
    BigInt sum = 0;
    BigInt term = 1;
    for (std::uint64_t i = 0; i <= upto && i <= x; ++i) {
        sum += term;
        term *= x - i;
        term /= i + 1;
    }
    return sum;
}

/// log2 of a positive big integer to ~50 significant digits.
inline BigFloat log2_big(const BigInt& v) {
    require(v > 0, "log2_big: argument must be positive");
    const std::size_t bits = boost::multiprecision::msb(v) + 1;
    if (bits <= 160) return boost::multiprecision::log2(BigFloat(v));
    // keep the top 160 bits; the discarded tail changes the result by < 2^-150
    const std::size_t shift = bits - 160;
    BigInt top = v >> shift;
    return boost::multiprecision::log2(BigFloat(top)) + BigFloat(shift);
}

inline BigFloat ln_big(const BigInt& v) { return log2_big(v) * boost::multiprecision::log(BigFloat(2)); }

/// floor(log2 v) for v >= 1.
inline std::size_t floor_log2(const BigInt& v) {
    require(v > 0, "floor_log2: argument must be positive");
    return boost::multiprecision::msb(v);
}

/// Lexicographic enumeration of the k-subsets of {0..n-1}.
///
///     Combinations c(5, 2);
///     do { use(c.current()); } while (c.next());
class Combinations {
public:
    Combinations(std::size_t n, std::size_t k) : n_(n), idx_(k) {
        require(k <= n, "Combinations: k must not exceed n");
        for (std::size_t i = 0; i < k; ++i) idx_[i] = i;
    }

    const std::vector<std::size_t>& current() const noexcept { return idx_; }

    /// Advances to the next subset; false once the last one has been passed.
    bool next() {
        const std::size_t k = idx_.size();
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (idx_[i] != i + n_ - k) {
                ++idx_[i];
                for (std::size_t j = i + 1; j < k; ++j) idx_[j] = idx_[j - 1] + 1;
                return true;
            }
        }
        return false;
    }

private:
    std::size_t n_;
    std::vector<std::size_t> idx_;
};

/// Calls f(subset) for every k-subset of {0..n-1} in lexicographic order.
/// f may return false to stop early.
template <class F>
void for_each_combination(std::size_t n, std::size_t k, F&& f) {
    Combinations c(n, k);
    do {
        if constexpr (std::is_same_v<decltype(f(c.current())), bool>) {
            if (!f(c.current())) return;
        } else {
            f(c.current());
        }
    } while (c.next());
}

} // namespace sparity
