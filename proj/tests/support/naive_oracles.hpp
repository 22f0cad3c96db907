#pragma once

// Reference implementations for tests. Deliberately naive: per-bit loops and
// bitmask enumeration, no use of the library's packed arithmetic or iterators.

#include <sparity/bit_vector.hpp>
#include <sparity/oracles.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace naive {

using sparity::BitVector;
using sparity::LabeledExample;

inline bool dot(const BitVector& a, const BitVector& b) {
    bool acc = false;
    for (std::size_t i = 0; i < a.size(); ++i) acc ^= a.get(i) && b.get(i);
    return acc;
}

inline std::size_t popcount(const BitVector& a) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < a.size(); ++i) c += a.get(i);
    return c;
}

inline BitVector xor_of(const BitVector& a, const BitVector& b) {
    BitVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.get(i) != b.get(i)) out.set(i);
    return out;
}

/// Point of GF(2)^dim whose coordinate i is bit i of mask.
inline BitVector from_mask(std::size_t dim, std::uint64_t mask) {
    BitVector v(dim);
    for (std::size_t i = 0; i < dim; ++i)
        if ((mask >> i) & 1u) v.set(i);
    return v;
}

/// All points of GF(2)^dim satisfying every (row, rhs) constraint, in mask order.
inline std::vector<BitVector> filter_points(std::size_t dim, const std::vector<std::pair<BitVector, bool>>& rows) {
    std::vector<BitVector> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << dim); ++mask) {
        auto p = from_mask(dim, mask);
        bool ok = true;
        for (const auto& [v, y] : rows) ok = ok && naive::dot(v, p) == y;
        if (ok) out.push_back(std::move(p));
    }
    return out;
}

/// Every weight-k vector of length n (n <= 20) consistent with the examples, sorted.
inline std::vector<BitVector> consistent_parities(const std::vector<LabeledExample>& examples, std::size_t n,
                                                  std::size_t k) {
    std::vector<BitVector> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcountll(mask)) != k) continue;
        auto f = from_mask(n, mask);
        bool ok = true;
        for (const auto& e : examples) ok = ok && naive::dot(e.a, f) == e.label;
        if (ok) out.push_back(std::move(f));
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Pascal's triangle in unsigned __int128, exact for x <= 125.
inline std::vector<std::vector<unsigned __int128>> pascal(std::size_t rows) {
    std::vector<std::vector<unsigned __int128>> p(rows + 1);
    for (std::size_t x = 0; x <= rows; ++x) {
        p[x].assign(x + 1, 1);
        for (std::size_t y = 1; y < x; ++y) p[x][y] = p[x - 1][y - 1] + p[x - 1][y];
    }
    return p;
}

inline std::string to_decimal(unsigned __int128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v) {
        s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    return s;
}

/// Non-comment, non-empty lines of a fixture file, split on whitespace.
inline std::vector<std::vector<std::string>> read_fixture(const std::string& name) {
    std::ifstream in(std::string(SPARITY_FIXTURE_DIR) + "/" + name);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream fields(line);
        std::vector<std::string> row;
        for (std::string f; fields >> f;) row.push_back(f);
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace naive

#ifdef CATCH_VERSION_MAJOR
template <>
struct Catch::StringMaker<sparity::BitVector> {
    static std::string convert(const sparity::BitVector& v) { return v.to_string(); }
};
#endif
