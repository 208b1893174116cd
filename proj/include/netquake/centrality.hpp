#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stop_token>
#include <vector>

#include "netquake/detail/parallel.hpp"
#include "netquake/graph.hpp"

namespace netquake {

// Thrown by long-running computations when their stop token fires.
struct StopRequested : Error {
    StopRequested() : Error("cancelled") {}
};

// Per-node scores; removed nodes carry kRemovedScore.
using ScoreVector = std::vector<double>;

inline constexpr double kRemovedScore = -std::numeric_limits<double>::infinity();

// Node ids ordered by score descending, ties by ascending id. Entries equal to
// kRemovedScore are left out.
inline std::vector<NodeId> rank_descending(const ScoreVector& scores) {
    std::vector<NodeId> order;
    order.reserve(scores.size());
    for (NodeId v = 0; v < scores.size(); ++v)
        if (scores[v] != kRemovedScore)
            order.push_back(v);
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        if (scores[a] != scores[b])
            return scores[a] > scores[b];
        return a < b;
    });
    return order;
}

inline std::size_t residual_degree(const Graph& graph, const RemovalState& state, NodeId v) {
    std::size_t k = 0;
    for (NodeId w : graph.neighbors(v))
        k += !state.is_removed(w);
    return k;
}

inline ScoreVector degree_scores(const Graph& graph, const RemovalState& state) {
    ScoreVector out(graph.node_count(), kRemovedScore);
    for (NodeId v = 0; v < graph.node_count(); ++v)
        if (!state.is_removed(v))
            out[v] = static_cast<double>(residual_degree(graph, state, v));
    return out;
}

namespace detail {

// Scratch space for one Brandes single-source pass over the residual graph.
struct BrandesWorkspace {
    explicit BrandesWorkspace(std::size_t n) : dist(n, -1), sigma(n, 0.0), delta(n, 0.0) {
        order.reserve(n);
    }

    void run(const Graph& graph, const RemovalState& state, NodeId source) {
        order.clear();
        dist[source] = 0;
        sigma[source] = 1.0;
        order.push_back(source);
        for (std::size_t head = 0; head < order.size(); ++head) {
            NodeId v = order[head];
            for (NodeId w : graph.neighbors(v)) {
                if (state.is_removed(w))
                    continue;
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    order.push_back(w);
                }
                if (dist[w] == dist[v] + 1)
                    sigma[w] += sigma[v];
            }
        }
        for (std::size_t i = order.size(); i-- > 1;) {
            NodeId w = order[i];
            const double coeff = (1.0 + delta[w]) / sigma[w];
            for (NodeId v : graph.neighbors(w))
                if (!state.is_removed(v) && dist[v] == dist[w] - 1)
                    delta[v] += sigma[v] * coeff;
        }
    }

    // Adds the dependencies of the last run to `acc` and clears the scratch.
    void accumulate_and_reset(std::vector<double>& acc) {
        for (std::size_t i = 0; i < order.size(); ++i) {
            NodeId w = order[i];
            if (i > 0)
                acc[w] += delta[w];
            dist[w] = -1;
            sigma[w] = 0.0;
            delta[w] = 0.0;
        }
        order.clear();
    }

    std::vector<std::int32_t> dist;
    std::vector<double> sigma;
    std::vector<double> delta;
    std::vector<NodeId> order;
};

// Sum of single-source dependencies over `sources`, reduced in the given order.
// Throws StopRequested once `stop` fires (checked once per source).
inline std::vector<double> dependency_sum(const Graph& graph, const RemovalState& state,
                                          const std::vector<NodeId>& sources, unsigned threads,
                                          const std::stop_token& stop = {}) {
    std::vector<double> acc(graph.node_count(), 0.0);
    const std::size_t n = graph.node_count();
    ordered_parallel<BrandesWorkspace>(
        sources.size(), threads, [n] { return BrandesWorkspace(n); },
        [&](std::size_t i, BrandesWorkspace& ws) {
            if (!stop.stop_requested())
                ws.run(graph, state, sources[i]);
        },
        [&](std::size_t, BrandesWorkspace& ws) {
            if (stop.stop_requested())
                throw StopRequested();
            ws.accumulate_and_reset(acc);
        });
    return acc;
}

}  // namespace detail

// Unnormalized shortest-path betweenness on the residual graph, unordered
// pairs counted once.
inline ScoreVector betweenness_exact(const Graph& graph, const RemovalState& state,
                                     unsigned threads = 1, std::stop_token stop = {}) {
    auto acc = detail::dependency_sum(graph, state, state.residual_nodes(), threads, stop);
    ScoreVector out(graph.node_count(), kRemovedScore);
    for (NodeId v = 0; v < graph.node_count(); ++v)
        if (!state.is_removed(v))
            out[v] = acc[v] / 2.0;
    return out;
}

struct PivotSample {
    std::vector<NodeId> pivots;
    std::uint64_t seed = 0;
};

// Draws `count` distinct residual nodes uniformly without replacement.
inline PivotSample draw_pivots(const RemovalState& state, std::size_t count, std::uint64_t seed) {
    auto pool = state.residual_nodes();
    if (count == 0 || count > pool.size())
        throw Error("pivot count must be in [1, residual node count]");
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
        std::swap(pool[i], pool[pick(rng)]);
    }
    pool.resize(count);
    return {std::move(pool), seed};
}

// Pivot-sampled betweenness: dependencies of the pivot sources only, scaled by
// residual_count / pivots so the estimate is unbiased for betweenness_exact.
inline ScoreVector betweenness_approx(const Graph& graph, const RemovalState& state,
                                      const PivotSample& sample, unsigned threads = 1,
                                      std::stop_token stop = {}) {
    const std::size_t residual = state.residual_count();
    if (sample.pivots.empty() || sample.pivots.size() > residual)
        throw Error("pivot count must be in [1, residual node count]");
    std::vector<std::uint8_t> used(graph.node_count(), 0);
    for (NodeId p : sample.pivots) {
        if (p >= graph.node_count() || state.is_removed(p) || used[p])
            throw Error("pivots must be distinct residual nodes");
        used[p] = 1;
    }
    auto acc = detail::dependency_sum(graph, state, sample.pivots, threads, stop);
    const double scale =
        static_cast<double>(residual) / static_cast<double>(sample.pivots.size()) / 2.0;
    ScoreVector out(graph.node_count(), kRemovedScore);
    for (NodeId v = 0; v < graph.node_count(); ++v)
        if (!state.is_removed(v))
            out[v] = acc[v] * scale;
    return out;
}

struct PageRankOptions {
    double damping = 0.85;
    double tolerance = 1e-9;
    std::size_t max_iters = 200;
};

// Power iteration on the residual graph with uniform teleport. Mass of
// isolated residual nodes is spread uniformly.
inline ScoreVector pagerank_scores(const Graph& graph, const RemovalState& state,
                                   const PageRankOptions& options = {}) {
    if (!(options.damping > 0.0 && options.damping < 1.0))
        throw Error("damping must lie in (0, 1)");
    if (!(options.tolerance > 0.0))
        throw Error("tolerance must be positive");
    const std::size_t n = graph.node_count();
    ScoreVector out(n, kRemovedScore);
    const auto nodes = state.residual_nodes();
    if (nodes.empty())
        return out;
    const double share = 1.0 / static_cast<double>(nodes.size());
    std::vector<double> deg(n, 0.0), rank(n, 0.0), next(n, 0.0);
    for (NodeId v : nodes) {
        deg[v] = static_cast<double>(residual_degree(graph, state, v));
        rank[v] = share;
    }
    const double d = options.damping;
    for (std::size_t it = 0; it < options.max_iters; ++it) {
        double dangling = 0.0;
        for (NodeId v : nodes)
            if (deg[v] == 0.0)
                dangling += rank[v];
        const double base = (1.0 - d) * share + d * dangling * share;
        double change = 0.0;
        for (NodeId v : nodes) {
            double in = 0.0;
            for (NodeId u : graph.neighbors(v))
                if (!state.is_removed(u))
                    in += rank[u] / deg[u];
            next[v] = base + d * in;
            change += std::abs(next[v] - rank[v]);
        }
        std::swap(rank, next);
        if (change <= options.tolerance)
            break;
    }
    for (NodeId v : nodes)
        out[v] = rank[v];
    return out;
}

// Collective influence CI_l(i) = (k_i - 1) * sum over the residual nodes j at
// distance exactly l of (k_j - 1), with k the residual degree.
inline ScoreVector collective_influence(const Graph& graph, const RemovalState& state,
                                        unsigned ball_radius) {
    if (ball_radius < 1)
        throw Error("ball radius must be at least 1");
    const std::size_t n = graph.node_count();
    ScoreVector out(n, kRemovedScore);
    std::vector<std::size_t> k(n, 0);
    for (NodeId v = 0; v < n; ++v)
        if (!state.is_removed(v))
            k[v] = residual_degree(graph, state, v);

    std::vector<std::uint32_t> stamp(n, 0);
    std::uint32_t epoch = 0;
    std::vector<NodeId> frontier, next;
    for (NodeId i = 0; i < n; ++i) {
        if (state.is_removed(i))
            continue;
        if (k[i] <= 1) {
            out[i] = 0.0;
            continue;
        }
        ++epoch;
        stamp[i] = epoch;
        frontier.assign(1, i);
        for (unsigned depth = 0; depth < ball_radius && !frontier.empty(); ++depth) {
            next.clear();
            for (NodeId v : frontier)
                for (NodeId w : graph.neighbors(v))
                    if (!state.is_removed(w) && stamp[w] != epoch) {
                        stamp[w] = epoch;
                        next.push_back(w);
                    }
            std::swap(frontier, next);
        }
        double boundary = 0.0;
        for (NodeId j : frontier)
            boundary += static_cast<double>(k[j]) - 1.0;
        out[i] = (static_cast<double>(k[i]) - 1.0) * boundary;
    }
    return out;
}

}  // namespace netquake
