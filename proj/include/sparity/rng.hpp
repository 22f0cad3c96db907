#pragma once

#include <sparity/errors.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace sparity {

/// splitmix64 finalizer (Steele, Lea, Flood 2014); used only to derive seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Seeded generator with a platform-independent output stream.
///
/// Raw words come from std::mt19937_64, whose sequence is fixed by the C++
/// standard. The engine is seeded with splitmix64(seed). Bounded integers use
/// rejection sampling on raw words and probabilities use the top 53 bits, so
/// nothing depends on the standard library's distribution implementations.
///
/// fork(stream) makes an independent child seeded with
/// splitmix64(seed ^ splitmix64(stream + 1)); it does not advance the parent.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : seed_(seed), engine_(splitmix64(seed)) {}

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t next_u64() { return engine_(); }

    Rng fork(std::uint64_t stream) const { return Rng(splitmix64(seed_ ^ splitmix64(stream + 1))); }

    /// Uniform in [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        require(bound > 0, "Rng::below: bound must be positive");
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % bound;
    }

    /// Uniform in [0, 1) with 53 bits of resolution.
    double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return unit() < p; }

    /// Uniform size-k subset of {0..n-1}, sorted (partial Fisher-Yates).
    std::vector<std::size_t> subset(std::size_t n, std::size_t k) {
        require(k <= n, "Rng::subset: k must not exceed n");
        std::vector<std::size_t> pool(n);
        for (std::size_t i = 0; i < n; ++i) pool[i] = i;
        for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + below(n - i)]);
        pool.resize(k);
        std::sort(pool.begin(), pool.end());
        return pool;
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

} // namespace sparity
