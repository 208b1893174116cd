// Compares baseline attacks on a small two-hub network.

#include <cstdio>
#include <vector>

#include "netquake/netquake.hpp"

int main() {
    namespace nq = netquake;
    // a-c, b-c, c-d, d-e, e-f, f-g, f-h, g-i
    const std::vector<nq::Edge> edges = {{0, 1}, {2, 1}, {1, 3}, {3, 4},
                                         {4, 5}, {5, 6}, {5, 7}, {6, 8}};
    const auto graph = nq::Graph::from_edges(9, edges, {"a", "c", "b", "d", "e", "f", "g", "h", "i"});

    for (auto mode : {nq::AttackMode::Static, nq::AttackMode::Interactive}) {
        for (auto metric : {nq::Metric::Degree, nq::Metric::Betweenness}) {
            nq::StrategySpec spec;
            spec.metric = metric;
            spec.mode = mode;
            const auto attack = nq::build_attack(graph, spec);
            const auto curve = nq::curve_for_attack(graph, attack);
            std::printf("%-6s R=%.4f first=%s\n", spec.descriptor().c_str(), curve.R,
                        graph.label(attack.order.front()).c_str());
        }
    }

    nq::QreParams params;
    params.intervals = 9;
    params.seed = 1;
    const auto qre = nq::qre_estimate(graph, params);
    std::printf("QRE    R=%.4f s(2)=%.4f\n", qre.best_R, qre.best_materialized[2]);
}
