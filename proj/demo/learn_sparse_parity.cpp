// Learns a hidden weight-3 parity on 64 bits with the online learner, then
// recovers a weight-1 parity from noisy labels with the flip-set reduction.

#include <sparity/sparity.hpp>

#include <iostream>

using namespace sparity;

int main() {
    const std::size_t n = 64, k = 3, t = 12;
    const auto hidden = gen_hidden(n, k, 2024);
    auto source = ExampleSource::uniform(hidden, 7);

    auto learner = OnlineLearner::create(n, k, t, 2, 1);
    std::cout << "charts: " << learner.charts().size() << ", mistake bound: " << learner.mistake_bound() << '\n';

    std::size_t rounds = 0;
    while (!is_identified(learner.status())) {
        auto ex = source.next();
        learner.observe(ex.a, ex.label);
        ++rounds;
    }
    const auto found = std::get<Identified>(learner.status()).hypothesis;
    std::cout << "identified after " << rounds << " examples and " << learner.mistakes() << " mistakes\n"
              << "  hidden " << hidden.to_string() << "\n  found  " << found.to_string() << '\n';

    // Noisy labels: 30 primary samples, so flip sets of size <= 1 are tried.
    const auto secret = gen_hidden(20, 1, 5);
    auto noisy = ExampleSource::uniform(secret, 9, 0.03);
    const auto params = NoisyParams::with_counts(0.03, 0.2, 30, 200);
    try {
        const auto out = noisy_learn(mitm_inner(20, 1), noisy, params);
        std::cout << "noisy: " << out.inner_invocations << " inner runs, " << out.distinct_candidates
                  << " candidates, winner disagrees on " << out.winner_disagreements << " of " << params.s_doubleprime
                  << (out.hypothesis == secret ? ", correct\n" : ", wrong\n");
    } catch (const no_candidates&) {
        std::cout << "noisy: more label flips than the budget allows\n";
    }
    return found == hidden ? 0 : 1;
}
