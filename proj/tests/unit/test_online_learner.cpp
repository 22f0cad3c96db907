#include <catch_amalgamated.hpp>

#include <naive_oracles.hpp>
#include <sparity/online_learner.hpp>
#include <sparity/oracles.hpp>

#include <algorithm>
#include <vector>

using namespace sparity;

namespace {
BitVector bv(const char* s) { return BitVector::parse(s); }

CoverFamily family_of(std::size_t n, std::vector<std::vector<std::size_t>> parts,
                      std::vector<std::vector<std::size_t>> subsets) {
    CoverFamily f;
    f.params = CoverParams{n, 1, 1, 2};
    f.parts = std::move(parts);
    f.subsets = std::move(subsets);
    return f;
}

bool in_union(const OnlineLearner& learner, const BitVector& f) {
    const auto supp = f.support();
    for (const auto& c : learner.charts()) {
        if (!std::includes(c.support.begin(), c.support.end(), supp.begin(), supp.end())) continue;
        if (c.space.contains(f.gather(c.support))) return true;
    }
    return false;
}
} // namespace

TEST_CASE("construction", "[online_learner]") {
    auto learner = OnlineLearner::create(8, 1, 2, 2, 3);
    CHECK_FALSE(learner.cover_warning());
    CHECK(learner.mistakes() == 0);
    // T = 4 parts of size 2, each chart joins two of them
    for (const auto& c : learner.charts()) {
        CHECK(c.support.size() <= 4);
        CHECK(c.space.ambient_dim() == c.support.size());
        CHECK(c.space.rank() == 0);
    }
    const auto m = learner.charts().size();
    CHECK(learner.initial_mass() <= BigInt(m) << 4);
    CHECK(learner.mass_history().size() == 1);
    CHECK(std::holds_alternative<Active>(learner.status()));

    auto again = OnlineLearner::create(8, 1, 2, 2, 3);
    REQUIRE(again.charts().size() == m);
    for (std::size_t i = 0; i < m; ++i) CHECK(again.charts()[i].support == learner.charts()[i].support);
}

TEST_CASE("duplicate subsets collapse to one chart", "[online_learner]") {
    auto learner = OnlineLearner(family_of(4, {{0, 1}, {2, 3}}, {{0}, {1}, {0}, {0}}));
    CHECK(learner.charts().size() == 2);
    CHECK_THROWS_AS(OnlineLearner(family_of(4, {{0, 1}, {2, 3}}, {})), contract_violation);
}

TEST_CASE("predict examples", "[online_learner]") {
    auto single = OnlineLearner(family_of(3, {{0, 1, 2}}, {{0}}));
    CHECK(single.label_masses(bv("101")) == std::pair<BigInt, BigInt>{4, 4});
    CHECK(single.predict(bv("101")) == 0);

    single.update(bv("100"), 1);
    CHECK(single.predict(bv("100")) == 1);
    CHECK(single.label_masses(bv("100")) == std::pair<BigInt, BigInt>{0, 4});

    // chart A on {0,1,2,3}, chart B on {4,5}
    auto two = OnlineLearner(family_of(6, {{0, 1, 2, 3}, {4, 5}}, {{0}, {1}}));
    two.update(bv("110000"), 0);
    CHECK(two.label_masses(bv("110001")) == std::pair<BigInt, BigInt>{10, 2});
    CHECK(two.predict(bv("110001")) == 0);
    CHECK_THROWS_AS(two.predict(bv("11")), contract_violation);
}

TEST_CASE("update examples", "[online_learner]") {
    auto learner = OnlineLearner::create(12, 2, 3, 2, 8);
    const auto a = bv("101100111000");
    learner.update(a, 1);
    const auto after_once = learner.total_mass();
    learner.update(a, 1);
    CHECK(learner.total_mass() == after_once);

    auto single = OnlineLearner(family_of(3, {{0, 1, 2}}, {{0}}));
    single.update(bv("011"), 0);
    CHECK(single.total_mass() == 4);
    CHECK_THROWS_AS(single.update(bv("011"), 1), inconsistent_stream);
    // the failed update left the learner as it was
    CHECK(single.total_mass() == 4);
    CHECK(single.mass_history().size() == 2);
    CHECK(single.charts().size() == 1);
}

TEST_CASE("identification at tiny scale", "[online_learner]") {
    for (std::size_t hidden = 0; hidden < 4; ++hidden) {
        auto learner = OnlineLearner::create(4, 1, 2, 2, 1);
        const auto f = BitVector::unit(4, hidden);
        for (std::size_t i = 0; i < 4; ++i) {
            const auto e = BitVector::unit(4, i);
            learner.observe(e, dot(e, f));
        }
        const auto st = learner.status();
        REQUIRE(is_identified(st));
        CHECK(std::get<Identified>(st).hypothesis == f);
        CHECK(std::get<Identified>(st).hypothesis.popcount() == 1);
    }
}

TEST_CASE("halving, mistake bound and brute-force equivalence on honest streams", "[online_learner][property]") {
    std::size_t runs = 0;
    for (std::size_t n : {6u, 9u, 14u})
        for (std::size_t k : {1u, 2u})
            for (std::uint64_t seed = 1; seed <= 12; ++seed) {
                const std::size_t t = std::max<std::size_t>(k, n / 4);
                auto learner = OnlineLearner::create(n, k, t, 2, seed);
                const auto f = gen_hidden(n, k, seed * 31);
                auto source = ExampleSource::uniform(f, seed * 17);
                std::vector<LabeledExample> seen;
                REQUIRE(in_union(learner, f));
                for (std::size_t round = 0; round < 6 * n && !is_identified(learner.status()); ++round) {
                    auto ex = source.next();
                    const BigInt before = learner.total_mass();
                    const bool mistake = learner.observe(ex.a, ex.label);
                    seen.push_back(ex);
                    const BigInt after = learner.total_mass();
                    REQUIRE(after <= before);
                    if (mistake) REQUIRE(after <= before / 2);
                    REQUIRE(learner.mistakes() <= learner.mistake_bound());
                    REQUIRE(in_union(learner, f));
                    for (const auto& g : naive::consistent_parities(seen, n, k)) REQUIRE(in_union(learner, g));
                }
                const auto st = learner.status();
                REQUIRE(is_identified(st));
                CHECK(std::get<Identified>(st).hypothesis == f);
                const auto brute = naive::consistent_parities(seen, n, k);
                REQUIRE(brute.size() == 1);
                CHECK(brute.front() == f);
                ++runs;
            }
    CHECK(runs == 72);
}

TEST_CASE("per-round work stays within the quadratic ceiling", "[online_learner]") {
    auto learner = OnlineLearner::create(96, 3, 16, 2, 4);
    const auto f = gen_hidden(96, 3, 4);
    auto source = ExampleSource::uniform(f, 5);
    for (int round = 0; round < 120 && !is_identified(learner.status()); ++round) {
        std::uint64_t ceiling_rows = 0, ceiling_words = 0;
        for (const auto& c : learner.charts()) {
            const auto l = c.support.size();
            ceiling_rows += 2 * c.space.rank();
            ceiling_words += 2 * l * BitVector::word_count(l);
        }
        auto ex = source.next();
        learner.observe(ex.a, ex.label);
        REQUIRE(learner.last_round_ops().row_xors <= ceiling_rows);
        REQUIRE(learner.last_round_ops().word_xors <= ceiling_words);
    }
    CHECK(is_identified(learner.status()));
}
