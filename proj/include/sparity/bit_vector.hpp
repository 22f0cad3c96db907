#pragma once

#include <sparity/errors.hpp>

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sparity {

/// Fixed-length vector over GF(2), packed 64 coordinates per word.
///
/// Coordinate i lives in word i / 64 at bit i % 64 (little-endian within the
/// word). Storage beyond len() is kept zero so word-wise comparisons, popcount
/// and hashing never see stale bits.
class BitVector {
public:
    using word_type = std::uint64_t;
    static constexpr std::size_t word_bits = 64;

    BitVector() = default;
    explicit BitVector(std::size_t len) : len_(len), words_(word_count(len), 0) {}

    static constexpr std::size_t word_count(std::size_t len) { return (len + word_bits - 1) / word_bits; }

    static BitVector unit(std::size_t len, std::size_t i) {
        BitVector v(len);
        v.set(i);
        return v;
    }

    static BitVector ones(std::size_t len) {
        BitVector v(len);
        for (auto& w : v.words_) w = ~word_type{0};
        v.trim();
        return v;
    }

    /// Builds from indices of the set coordinates.
    static BitVector from_support(std::size_t len, std::span<const std::size_t> support) {
        BitVector v(len);
        for (auto i : support) v.set(i);
        return v;
    }

    /// Takes word storage as-is; bits past len are cleared.
    static BitVector from_words(std::size_t len, std::vector<word_type> words) {
        require(words.size() == word_count(len), "word count does not match length");
        BitVector v;
        v.len_ = len;
        v.words_ = std::move(words);
        v.trim();
        return v;
    }

    /// Parses a '0'/'1' string; character i is coordinate i.
    static BitVector parse(std::string_view bits) {
        BitVector v(bits.size());
        for (std::size_t i = 0; i < bits.size(); ++i) {
            if (bits[i] == '1')
                v.set(i);
            else
                require(bits[i] == '0', "bit string may only contain '0' and '1'");
        }
        return v;
    }

    std::size_t size() const noexcept { return len_; }
    bool empty() const noexcept { return len_ == 0; }
    std::span<const word_type> words() const noexcept { return words_; }

    bool get(std::size_t i) const { return (words_[i / word_bits] >> (i % word_bits)) & 1u; }
    bool operator[](std::size_t i) const { return get(i); }

    void set(std::size_t i, bool value = true) {
        require(i < len_, "bit index out of range");
        const word_type mask = word_type{1} << (i % word_bits);
        if (value)
            words_[i / word_bits] |= mask;
        else
            words_[i / word_bits] &= ~mask;
    }

    void flip(std::size_t i) {
        require(i < len_, "bit index out of range");
        words_[i / word_bits] ^= word_type{1} << (i % word_bits);
    }

    BitVector& operator^=(const BitVector& other) {
        require(len_ == other.len_, "xor of vectors with different lengths");
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
        return *this;
    }

    friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }

    std::size_t popcount() const noexcept {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool is_zero() const noexcept {
        return std::all_of(words_.begin(), words_.end(), [](word_type w) { return w == 0; });
    }

    /// Index of the lowest set coordinate, or size() if the vector is zero.
    std::size_t lowest_set() const noexcept {
        for (std::size_t w = 0; w < words_.size(); ++w)
            if (words_[w] != 0) return w * word_bits + static_cast<std::size_t>(std::countr_zero(words_[w]));
        return len_;
    }

    /// Sorted indices of set coordinates.
    std::vector<std::size_t> support() const {
        std::vector<std::size_t> out;
        for (std::size_t w = 0; w < words_.size(); ++w) {
            auto bits = words_[w];
            while (bits) {
                out.push_back(w * word_bits + static_cast<std::size_t>(std::countr_zero(bits)));
                bits &= bits - 1;
            }
        }
        return out;
    }

    /// Restriction to the listed coordinates: result bit j = get(coords[j]).
    BitVector gather(std::span<const std::size_t> coords) const {
        BitVector out(coords.size());
        for (std::size_t j = 0; j < coords.size(); ++j)
            if (get(coords[j])) out.words_[j / word_bits] |= word_type{1} << (j % word_bits);
        return out;
    }

    /// Inverse of gather: places bit j of this vector at coords[j] in a length-len vector.
    BitVector scatter(std::span<const std::size_t> coords, std::size_t len) const {
        require(coords.size() == len_, "scatter: coordinate list must match vector length");
        BitVector out(len);
        for (std::size_t j = 0; j < len_; ++j)
            if (get(j)) out.set(coords[j]);
        return out;
    }

    std::string to_string() const {
        std::string s(len_, '0');
        for (std::size_t i = 0; i < len_; ++i)
            if (get(i)) s[i] = '1';
        return s;
    }

    friend bool operator==(const BitVector&, const BitVector&) = default;

    /// Orders by length, then lexicographically by coordinate 0, 1, 2, ...
    friend bool operator<(const BitVector& a, const BitVector& b) {
        if (a.len_ != b.len_) return a.len_ < b.len_;
        for (std::size_t w = 0; w < a.words_.size(); ++w) {
            if (a.words_[w] == b.words_[w]) continue;
            // same order as comparing to_string() results
            const auto diff = a.words_[w] ^ b.words_[w];
            return ((a.words_[w] >> std::countr_zero(diff)) & 1u) == 0;
        }
        return false;
    }

private:
    void trim() noexcept {
        if (len_ % word_bits != 0 && !words_.empty())
            words_.back() &= (word_type{1} << (len_ % word_bits)) - 1;
    }

    std::size_t len_ = 0;
    std::vector<word_type> words_;
};

/// Inner product mod 2.
inline bool dot(const BitVector& a, const BitVector& b) {
    require(a.size() == b.size(), "dot of vectors with different lengths");
    auto aw = a.words();
    auto bw = b.words();
    BitVector::word_type acc = 0;
    for (std::size_t w = 0; w < aw.size(); ++w) acc ^= aw[w] & bw[w];
    return std::popcount(acc) & 1;
}

struct BitVectorHash {
    std::size_t operator()(const BitVector& v) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ull ^ v.size();
        for (auto w : v.words()) {
            h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

} // namespace sparity
