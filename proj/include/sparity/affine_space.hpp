#pragma once

#include <sparity/bit_vector.hpp>
#include <sparity/errors.hpp>

#include <cstddef>
#include <optional>
#include <vector>

namespace sparity {

/// Word-level work counter for instrumented runs.
struct OpCount {
    std::size_t row_xors = 0;
    std::size_t word_xors = 0;

    void add_row_xor(std::size_t words) {
        ++row_xors;
        word_xors += words;
    }
};

struct Reduction {
    BitVector residual;
    bool rhs = false;
};

/// log2 of |space ∩ {<v,f> = y}| for y = 0 and y = 1; nullopt means the set is empty.
struct SplitSizes {
    std::optional<std::size_t> log2_size_y0;
    std::optional<std::size_t> log2_size_y1;

    std::optional<std::size_t> for_label(bool y) const { return y ? log2_size_y1 : log2_size_y0; }
    friend bool operator==(const SplitSizes&, const SplitSizes&) = default;
};

/// Solution set of a linear system over GF(2), kept in reduced row echelon form.
///
/// Each row's pivot is its lowest set column; pivots increase down the rows and
/// every pivot column is zero in all other rows. That form is unique for a given
/// solution set, so two spaces are equal iff their rows compare equal. An
/// inconsistent system is represented by the empty flag with no rows.
class AffineSpace {
public:
    struct Row {
        BitVector coeffs;
        bool rhs = false;
        std::size_t pivot = 0;

        friend bool operator==(const Row&, const Row&) = default;
    };

    AffineSpace() = default;
    /// The whole of GF(2)^ambient_dim.
    explicit AffineSpace(std::size_t ambient_dim) : dim_(ambient_dim) {}

    static AffineSpace empty_set(std::size_t ambient_dim) {
        AffineSpace s(ambient_dim);
        s.empty_ = true;
        return s;
    }

    /// Intersection of the given constraints, starting from the full space.
    static AffineSpace from_constraints(std::size_t ambient_dim, const std::vector<std::pair<BitVector, bool>>& rows) {
        AffineSpace s(ambient_dim);
        for (const auto& [v, y] : rows) s.constrain_in_place(v, y);
        return s;
    }

    std::size_t ambient_dim() const noexcept { return dim_; }
    std::size_t rank() const noexcept { return rows_.size(); }
    bool is_empty() const noexcept { return empty_; }
    const std::vector<Row>& rows() const noexcept { return rows_; }

    std::optional<std::size_t> log2_size() const {
        if (empty_) return std::nullopt;
        return dim_ - rows_.size();
    }

    Reduction reduce(BitVector v, bool y, OpCount* ops = nullptr) const {
        require(v.size() == dim_, "reduce: vector length must equal ambient dimension");
        require(!empty_, "reduce: space is empty");
        for (const auto& row : rows_) {
            if (!v.get(row.pivot)) continue;
            v ^= row.coeffs;
            y ^= row.rhs;
            if (ops) ops->add_row_xor(BitVector::word_count(dim_));
        }
        return {std::move(v), y};
    }

    SplitSizes split_sizes(const BitVector& v, OpCount* ops = nullptr) const {
        require(v.size() == dim_, "split_sizes: vector length must equal ambient dimension");
        if (empty_) return {};
        const auto r = reduce(v, false, ops);
        const std::size_t current = dim_ - rows_.size();
        if (!r.residual.is_zero()) return {current - 1, current - 1};
        // <v,f> is the same for every point: it equals the reduced rhs
        SplitSizes out;
        (r.rhs ? out.log2_size_y1 : out.log2_size_y0) = current;
        return out;
    }

    AffineSpace constrain(const BitVector& v, bool y, OpCount* ops = nullptr) const {
        AffineSpace out = *this;
        out.constrain_in_place(v, y, ops);
        return out;
    }

    void constrain_in_place(const BitVector& v, bool y, OpCount* ops = nullptr) {
        require(v.size() == dim_, "constrain: vector length must equal ambient dimension");
        if (empty_) return;
        auto [residual, rhs] = reduce(v, y, ops);
        if (residual.is_zero()) {
            if (rhs) {
                empty_ = true;
                rows_.clear();
            }
            return;
        }
        const std::size_t pivot = residual.lowest_set();
        // rows with a pivot below `pivot` keep their pivot after the xor
        for (auto& row : rows_) {
            if (!row.coeffs.get(pivot)) continue;
            row.coeffs ^= residual;
            row.rhs ^= rhs;
            if (ops) ops->add_row_xor(BitVector::word_count(dim_));
        }
        auto pos = rows_.begin();
        while (pos != rows_.end() && pos->pivot < pivot) ++pos;
        rows_.insert(pos, Row{std::move(residual), rhs, pivot});
    }

    bool contains(const BitVector& point) const {
        require(point.size() == dim_, "contains: vector length must equal ambient dimension");
        if (empty_) return false;
        for (const auto& row : rows_)
            if (dot(row.coeffs, point) != row.rhs) return false;
        return true;
    }

    /// The point with every free coordinate set to zero.
    BitVector particular_point() const {
        require(!empty_, "particular_point: space is empty");
        BitVector p(dim_);
        for (const auto& row : rows_)
            if (row.rhs) p.set(row.pivot);
        return p;
    }

    /// The unique point of a rank-full space.
    BitVector sole_point() const {
        require(!empty_, "sole_point: space is empty");
        if (rows_.size() != dim_) throw not_singleton("sole_point: space has free coordinates");
        // back-substitution; with every column a pivot each row reduces to x_pivot = rhs
        BitVector x(dim_);
        for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
            bool value = it->rhs;
            for (auto c : it->coeffs.support())
                if (c != it->pivot) value ^= x.get(c);
            x.set(it->pivot, value);
        }
        return x;
    }

    /// Every point, by assigning the free coordinates in binary counting order.
    std::vector<BitVector> points(std::size_t max_free = 20) const {
        if (empty_) return {};
        const std::size_t free_count = dim_ - rows_.size();
        require(free_count <= max_free, "points: too many free coordinates to enumerate");
        std::vector<std::size_t> free_cols;
        {
            std::size_t r = 0;
            for (std::size_t c = 0; c < dim_; ++c) {
                if (r < rows_.size() && rows_[r].pivot == c)
                    ++r;
                else
                    free_cols.push_back(c);
            }
        }
        std::vector<BitVector> out;
        out.reserve(std::size_t{1} << free_count);
        for (std::size_t mask = 0; mask < (std::size_t{1} << free_count); ++mask) {
            BitVector p(dim_);
            for (std::size_t j = 0; j < free_count; ++j)
                if ((mask >> j) & 1u) p.set(free_cols[j]);
            for (const auto& row : rows_) {
                bool value = row.rhs;
                for (auto c : free_cols)
                    if (row.coeffs.get(c) && p.get(c)) value = !value;
                p.set(row.pivot, value);
            }
            out.push_back(std::move(p));
        }
        return out;
    }

    friend bool operator==(const AffineSpace&, const AffineSpace&) = default;

private:
    std::size_t dim_ = 0;
    bool empty_ = false;
    std::vector<Row> rows_;
};

} // namespace sparity
