#pragma once

// Independent reference implementations used only by the tests. They favour
// obviousness over speed and share no code with the library beyond Graph.

#include <cstdint>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "netquake/graph.hpp"

namespace oracle {

using netquake::Edge;
using netquake::Graph;
using netquake::NodeId;

inline std::vector<std::vector<bool>> adjacency_matrix(const Graph& g) {
    std::vector<std::vector<bool>> a(g.node_count(), std::vector<bool>(g.node_count(), false));
    for (auto [u, v] : g.edges())
        a[u][v] = a[v][u] = true;
    return a;
}

// All-pairs BFS distances over nodes with alive[v]; -1 when unreachable.
inline std::vector<std::vector<int>> distances(const Graph& g, const std::vector<bool>& alive) {
    const std::size_t n = g.node_count();
    std::vector<std::vector<int>> d(n, std::vector<int>(n, -1));
    for (NodeId s = 0; s < n; ++s) {
        if (!alive[s])
            continue;
        std::queue<NodeId> q;
        d[s][s] = 0;
        q.push(s);
        while (!q.empty()) {
            NodeId v = q.front();
            q.pop();
            for (NodeId w : g.neighbors(v))
                if (alive[w] && d[s][w] < 0) {
                    d[s][w] = d[s][v] + 1;
                    q.push(w);
                }
        }
    }
    return d;
}

// Betweenness by path counting: for every unordered pair {s, t}, node v lies on
// sigma_sv * sigma_vt of the sigma_st shortest paths iff d(s,v) + d(v,t) = d(s,t).
// Path counts are exact integers.
inline std::vector<double> betweenness(const Graph& g, const std::vector<bool>& alive) {
    const std::size_t n = g.node_count();
    const auto d = distances(g, alive);
    // sigma[s][t] via dynamic programming over distance layers.
    std::vector<std::vector<std::uint64_t>> sigma(n, std::vector<std::uint64_t>(n, 0));
    for (NodeId s = 0; s < n; ++s) {
        if (!alive[s])
            continue;
        std::vector<NodeId> order;
        for (NodeId v = 0; v < n; ++v)
            if (d[s][v] >= 0)
                order.push_back(v);
        std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return d[s][a] < d[s][b]; });
        sigma[s][s] = 1;
        for (NodeId v : order)
            for (NodeId w : g.neighbors(v))
                if (alive[w] && d[s][w] == d[s][v] + 1)
                    sigma[s][w] += sigma[s][v];
    }
    std::vector<double> out(n, 0.0);
    for (NodeId s = 0; s < n; ++s)
        for (NodeId t = s + 1; t < n; ++t) {
            if (!alive[s] || !alive[t] || d[s][t] < 0)
                continue;
            for (NodeId v = 0; v < n; ++v) {
                if (v == s || v == t || !alive[v] || d[s][v] < 0 || d[v][t] < 0)
                    continue;
                if (d[s][v] + d[v][t] == d[s][t])
                    out[v] += static_cast<double>(sigma[s][v] * sigma[v][t]) /
                              static_cast<double>(sigma[s][t]);
            }
        }
    return out;
}

// Largest component among alive nodes, by BFS.
inline std::size_t gc_size(const Graph& g, const std::vector<bool>& alive) {
    const std::size_t n = g.node_count();
    std::vector<bool> seen(n, false);
    std::size_t best = 0;
    for (NodeId s = 0; s < n; ++s) {
        if (!alive[s] || seen[s])
            continue;
        std::size_t size = 0;
        std::queue<NodeId> q;
        q.push(s);
        seen[s] = true;
        while (!q.empty()) {
            NodeId v = q.front();
            q.pop();
            ++size;
            for (NodeId w : g.neighbors(v))
                if (alive[w] && !seen[w]) {
                    seen[w] = true;
                    q.push(w);
                }
        }
        best = std::max(best, size);
    }
    return best;
}

// s(Q) for Q = 0..attack.size(), recomputed from scratch after every removal.
inline std::vector<double> forward_curve(const Graph& g, const std::vector<NodeId>& attack) {
    std::vector<bool> alive(g.node_count(), true);
    const double n = static_cast<double>(g.node_count());
    std::vector<double> out;
    out.push_back(n == 0 ? 0.0 : static_cast<double>(gc_size(g, alive)) / n);
    for (NodeId v : attack) {
        alive[v] = false;
        out.push_back(static_cast<double>(gc_size(g, alive)) / n);
    }
    return out;
}

inline double robustness(const std::vector<double>& curve) {
    const std::size_t n = curve.size() - 1;
    double sum = 0.0;
    for (std::size_t q = 1; q <= n; ++q)
        sum += curve[q];
    return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

// G(n, p) by testing every pair; independent of the library generator.
inline Graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(p);
    std::vector<Edge> edges;
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = u + 1; v < n; ++v)
            if (coin(rng))
                edges.emplace_back(u, v);
    return Graph::from_edges(n, edges);
}

inline std::vector<NodeId> random_permutation(std::size_t n, std::mt19937_64& rng) {
    std::vector<NodeId> p(n);
    std::iota(p.begin(), p.end(), NodeId{0});
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

}  // namespace oracle
