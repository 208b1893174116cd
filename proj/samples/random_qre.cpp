// QRE against interactive betweenness on a generated scale-free network.
//   sample_random_qre [n] [seed]

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "netquake/netquake.hpp"

int main(int argc, char** argv) {
    namespace nq = netquake;
    const std::size_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1000;
    const std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 1;
    const auto graph = nq::generate_ba(n, 2, seed);

    auto t0 = std::chrono::steady_clock::now();
    const auto state = nq::qre_estimate(graph, {.intervals = 100, .pivots = {}, .iterations = {}, .seed = seed});
    auto t1 = std::chrono::steady_clock::now();
    std::printf("QRE   R=%.4f  %lld ms\n", state.best_R,
                static_cast<long long>(std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()));
    for (std::size_t i = 0; i < state.history.size(); ++i)
        std::printf("  iteration %2zu  R=%.4f\n", i, state.history[i]);

    nq::StrategySpec ibetw{.metric = nq::Metric::Betweenness, .mode = nq::AttackMode::Interactive};
    t0 = std::chrono::steady_clock::now();
    const auto curve = nq::run_strategy(graph, ibetw);
    t1 = std::chrono::steady_clock::now();
    std::printf("IBETW R=%.4f  %lld ms\n", curve.R,
                static_cast<long long>(std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()));
}
