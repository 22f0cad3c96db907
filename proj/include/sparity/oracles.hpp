#pragma once

#include <sparity/bit_vector.hpp>
#include <sparity/errors.hpp>
#include <sparity/rng.hpp>

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace sparity {

struct LabeledExample {
    BitVector a;
    bool label = false;

    friend bool operator==(const LabeledExample&, const LabeledExample&) = default;
};

/// Uniform weight-k vector of length n, reproducible from the seed.
inline BitVector gen_hidden(std::size_t n, std::size_t k, std::uint64_t seed) {
    require(k <= n, "gen_hidden: need k <= n");
    Rng rng(seed);
    const auto support = rng.subset(n, k);
    return BitVector::from_support(n, support);
}

/// Uniform vector: one raw word per 64 coordinates, low bit = lowest coordinate.
inline BitVector uniform_vector(std::size_t n, Rng& rng) {
    std::vector<BitVector::word_type> words(BitVector::word_count(n));
    for (auto& w : words) w = rng.next_u64();
    return BitVector::from_words(n, std::move(words));
}

/// Example stream for a hidden parity: uniform draws with optional Bernoulli
/// label noise, or replay of a fixed list.
///
/// Per uniform example the generator yields ceil(n/64) words for the vector,
/// then (only when eta > 0) one word for the flip decision. fork(j) gives a
/// source over the same hidden vector driven by rng.fork(j).
class ExampleSource {
public:
    static ExampleSource uniform(BitVector hidden, std::uint64_t seed, double eta = 0.0) {
        require(eta >= 0.0 && eta <= 1.0, "ExampleSource: eta must lie in [0, 1]");
        ExampleSource s;
        s.n_ = hidden.size();
        s.hidden_ = std::move(hidden);
        s.rng_ = Rng(seed);
        s.eta_ = eta;
        return s;
    }

    static ExampleSource replay(std::vector<LabeledExample> examples) {
        ExampleSource s;
        s.n_ = examples.empty() ? 0 : examples.front().a.size();
        for (const auto& e : examples) require(e.a.size() == s.n_, "ExampleSource: replayed examples differ in length");
        s.replay_ = std::move(examples);
        return s;
    }

    std::size_t n() const noexcept { return n_; }
    bool is_replay() const noexcept { return replay_.has_value(); }
    double eta() const noexcept { return eta_; }
    std::size_t drawn() const noexcept { return drawn_; }
    const std::optional<BitVector>& hidden() const noexcept { return hidden_; }

    /// Whether each emitted label was flipped. For tests only; learners never see it.
    const std::vector<bool>& flip_log() const noexcept { return flips_; }

    LabeledExample next() {
        if (replay_) {
            if (drawn_ >= replay_->size()) throw source_exhausted("replay source exhausted");
            return (*replay_)[drawn_++];
        }
        LabeledExample ex{uniform_vector(n_, rng_), false};
        ex.label = dot(ex.a, *hidden_);
        bool flipped = false;
        if (eta_ > 0.0) flipped = rng_.bernoulli(eta_);
        ex.label ^= flipped;
        flips_.push_back(flipped);
        ++drawn_;
        return ex;
    }

    std::vector<LabeledExample> take(std::size_t count) {
        std::vector<LabeledExample> out;
        out.reserve(count);
        for (std::size_t i = 0; i < count; ++i) out.push_back(next());
        return out;
    }

    ExampleSource fork(std::uint64_t stream) const {
        require(!replay_, "ExampleSource: replay sources cannot be forked");
        return uniform(*hidden_, rng_.fork(stream).seed(), eta_);
    }

private:
    ExampleSource() = default;

    std::size_t n_ = 0;
    std::optional<BitVector> hidden_;
    std::optional<std::vector<LabeledExample>> replay_;
    Rng rng_;
    double eta_ = 0.0;
    std::size_t drawn_ = 0;
    std::vector<bool> flips_;
};

/// Stream file format: one example per line, "<bits> <label>", where character
/// i of <bits> is coordinate i. Blank lines are skipped.
inline std::vector<LabeledExample> read_examples(std::istream& in) {
    std::vector<LabeledExample> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        std::istringstream fields(line);
        std::string bits, label, extra;
        fields >> bits >> label;
        require(!bits.empty() && (label == "0" || label == "1") && !(fields >> extra),
                "example stream line " + std::to_string(lineno) + ": expected '<bits> <0|1>'");
        auto a = BitVector::parse(bits);
        require(out.empty() || a.size() == out.front().a.size(),
                "example stream line " + std::to_string(lineno) + ": length differs from earlier lines");
        out.push_back({std::move(a), label == "1"});
    }
    return out;
}

inline void write_examples(std::ostream& out, std::span<const LabeledExample> examples) {
    for (const auto& e : examples) out << e.a.to_string() << ' ' << (e.label ? '1' : '0') << '\n';
}

inline std::vector<LabeledExample> load_examples(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path);
    return read_examples(in);
}

inline void save_examples(const std::string& path, std::span<const LabeledExample> examples) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write " + path);
    write_examples(out, examples);
    if (!out) throw io_error("write failed: " + path);
}

} // namespace sparity
