#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "netquake/graph.hpp"

namespace netquake {

// Barabasi-Albert preferential attachment. Starts from a complete graph on
// m+1 nodes; every later node attaches to m distinct existing nodes drawn with
// probability proportional to their current degree.
// M = C(m+1, 2) + (N - m - 1) * m.
inline Graph generate_ba(std::size_t n, std::size_t m, std::uint64_t seed) {
    if (m < 1 || m >= n)
        throw Error("Barabasi-Albert needs 1 <= m < N");
    std::mt19937_64 rng(seed);
    std::vector<Edge> edges;
    edges.reserve(m * (m + 1) / 2 + (n - m - 1) * m);
    // Every edge endpoint once: sampling uniformly from it is degree-weighted.
    std::vector<NodeId> endpoints;
    endpoints.reserve(2 * edges.capacity());
    for (NodeId u = 0; u <= m; ++u)
        for (NodeId v = u + 1; v <= m; ++v) {
            edges.emplace_back(u, v);
            endpoints.push_back(u);
            endpoints.push_back(v);
        }
    std::vector<NodeId> targets;
    std::vector<std::uint8_t> chosen(n, 0);
    for (NodeId v = static_cast<NodeId>(m + 1); v < n; ++v) {
        targets.clear();
        std::uniform_int_distribution<std::size_t> pick(0, endpoints.size() - 1);
        while (targets.size() < m) {
            NodeId t = endpoints[pick(rng)];
            if (!chosen[t]) {
                chosen[t] = 1;
                targets.push_back(t);
            }
        }
        for (NodeId t : targets) {
            chosen[t] = 0;
            edges.emplace_back(t, v);
            endpoints.push_back(t);
            endpoints.push_back(v);
        }
    }
    return Graph::from_edges(n, edges);
}

// Erdos-Renyi G(N, p): each unordered pair independently with probability p.
// Pairs are enumerated in (u, v) order with geometric skips.
inline Graph generate_er(std::size_t n, double p, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0))
        throw Error("Erdos-Renyi needs 0 <= p <= 1");
    std::vector<Edge> edges;
    if (p == 1.0) {
        for (NodeId u = 0; u < n; ++u)
            for (NodeId v = u + 1; v < n; ++v)
                edges.emplace_back(u, v);
    } else if (p > 0.0 && n > 1) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const double log_q = std::log1p(-p);
        // Batagelj-Brandes walk over the lower triangle (w < v).
        long long v = 1;
        long long w = -1;
        const long long nn = static_cast<long long>(n);
        while (v < nn) {
            const double r = unit(rng);
            w += 1 + static_cast<long long>(std::floor(std::log1p(-r) / log_q));
            while (w >= v && v < nn) {
                w -= v;
                ++v;
            }
            if (v < nn)
                edges.emplace_back(static_cast<NodeId>(w), static_cast<NodeId>(v));
        }
    }
    return Graph::from_edges(n, edges);
}

}  // namespace netquake
