#include <catch_amalgamated.hpp>

#include <sparity/oracles.hpp>
#include <sparity/rng.hpp>

#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <sstream>

using namespace sparity;

TEST_CASE("generator stream is pinned", "[oracles]") {
    // published splitmix64 output for state 0
    CHECK(splitmix64(0) == 0xe220a8397b1dcdafull);
    std::mt19937_64 reference(splitmix64(17));
    Rng rng(17);
    for (int i = 0; i < 1000; ++i) REQUIRE(rng.next_u64() == reference());
    CHECK(Rng(17).fork(2).seed() == splitmix64(17 ^ splitmix64(3)));
}

TEST_CASE("gen_hidden", "[oracles]") {
    CHECK(gen_hidden(9, 0, 4) == BitVector(9));
    CHECK(gen_hidden(9, 9, 4) == BitVector::ones(9));
    CHECK(gen_hidden(30, 4, 11) == gen_hidden(30, 4, 11));
    CHECK(gen_hidden(30, 4, 11).popcount() == 4);
    CHECK_THROWS_AS(gen_hidden(3, 4, 1), contract_violation);

    std::map<std::string, int> freq;
    const int draws = 10000;
    for (int seed = 0; seed < draws; ++seed) ++freq[gen_hidden(6, 2, seed).to_string()];
    REQUIRE(freq.size() == 15);
    double chi2 = 0;
    const double expected = draws / 15.0;
    for (const auto& [_, c] : freq) chi2 += (c - expected) * (c - expected) / expected;
    // 14 degrees of freedom, 0.1% critical value
    CHECK(chi2 < 36.12);
}

TEST_CASE("uniform source labels and noise", "[oracles]") {
    const auto f = gen_hidden(100, 5, 3);
    auto clean = ExampleSource::uniform(f, 5);
    for (int i = 0; i < 1000; ++i) {
        auto e = clean.next();
        REQUIRE(e.label == dot(e.a, f));
    }
    CHECK(clean.drawn() == 1000);

    auto noisy = ExampleSource::uniform(f, 6, 0.25);
    int flips = 0;
    for (int i = 0; i < 10000; ++i) {
        auto e = noisy.next();
        REQUIRE(noisy.flip_log().back() == (e.label != dot(e.a, f)));
        flips += noisy.flip_log().back();
    }
    CHECK(std::abs(flips / 10000.0 - 0.25) <= 0.02);

    auto again = ExampleSource::uniform(f, 6, 0.25);
    auto first = again.take(3);
    auto replayed = ExampleSource::uniform(f, 6, 0.25).take(3);
    CHECK(first == replayed);
    CHECK(again.fork(1).take(3) == ExampleSource::uniform(f, 6, 0.25).fork(1).take(3));
    CHECK(again.fork(1).take(3) != again.fork(2).take(3));
}

TEST_CASE("distinct parities disagree on about half the draws", "[oracles]") {
    Rng rng(8);
    auto source = ExampleSource::uniform(BitVector(80), 9);
    for (int pair = 0; pair < 20; ++pair) {
        const auto f = gen_hidden(80, 3, rng.next_u64());
        auto g = gen_hidden(80, 3, rng.next_u64());
        if (f == g) continue;
        const int draws = 4000;
        int differ = 0;
        for (int i = 0; i < draws; ++i) {
            auto e = source.next();
            differ += dot(e.a, f) != dot(e.a, g);
        }
        CHECK(std::abs(differ - draws / 2.0) <= 3 * std::sqrt(draws / 4.0));
    }
}

TEST_CASE("stream file round trip and replay", "[oracles]") {
    const std::string path = "sparity_oracles_stream.txt";
    std::vector<LabeledExample> three{{BitVector::parse("0110"), true},
                                      {BitVector::parse("0000"), false},
                                      {BitVector::parse("1011"), true}};
    save_examples(path, three);
    std::ifstream raw(path);
    std::stringstream text;
    text << raw.rdbuf();
    CHECK(text.str() == "0110 1\n0000 0\n1011 1\n");

    auto loaded = load_examples(path);
    CHECK(loaded == three);
    auto replay = ExampleSource::replay(loaded);
    CHECK(replay.take(3) == three);
    CHECK_THROWS_AS(replay.next(), source_exhausted);
    std::remove(path.c_str());

    CHECK_THROWS_AS(load_examples("/nonexistent/dir/stream.txt"), io_error);
    CHECK_THROWS_AS(save_examples("/nonexistent/dir/stream.txt", three), io_error);

    std::istringstream crlf("01 1\r\n\n10 0\r\n");
    CHECK(read_examples(crlf).size() == 2);
    std::istringstream bad_label("01 2\n");
    CHECK_THROWS_AS(read_examples(bad_label), contract_violation);
    std::istringstream ragged("01 1\n011 0\n");
    CHECK_THROWS_AS(read_examples(ragged), contract_violation);
    std::istringstream extra("01 1 0\n");
    CHECK_THROWS_AS(read_examples(extra), contract_violation);
}
