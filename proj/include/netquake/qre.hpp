#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stop_token>
#include <vector>

#include "netquake/attack.hpp"
#include "netquake/centrality.hpp"
#include "netquake/graph.hpp"

namespace netquake {

// How the default pivot count Y and iteration count Z are derived from N.
enum class PivotRule {
    PaperLiteral,  // Y = Z = max(2, round(sqrt(ln N)))
    Scaled,        // Y = Z = max(8, ceil(log2 N))
};

struct QreParams {
    std::size_t intervals = 100;           // X
    std::optional<std::size_t> pivots;     // Y, default from `rule`
    std::optional<std::size_t> iterations; // Z, default from `rule`
    std::uint64_t seed = 0;
    PivotRule rule = PivotRule::Scaled;
    unsigned threads = 1;
};

inline std::size_t default_pivot_count(std::size_t n, PivotRule rule) {
    const double nn = static_cast<double>(std::max<std::size_t>(n, 1));
    if (rule == PivotRule::PaperLiteral)
        return std::max<std::size_t>(2, static_cast<std::size_t>(std::llround(std::sqrt(std::log(nn)))));
    return std::max<std::size_t>(8, static_cast<std::size_t>(std::ceil(std::log2(nn))));
}

inline std::size_t resolved_pivots(const QreParams& p, std::size_t n) {
    return p.pivots.value_or(default_pivot_count(n, p.rule));
}

inline std::size_t resolved_iterations(const QreParams& p, std::size_t n) {
    return p.iterations.value_or(default_pivot_count(n, p.rule));
}

struct QreState {
    std::vector<double> best_materialized;  // Q = 0..N
    double best_R = 0.0;
    std::vector<double> history;            // R after stage 1, then after each refinement
};

// p_i = round(i * N / X) for i = 1..X, zeros and duplicates dropped.
inline std::vector<std::size_t> equi_length_positions(std::size_t n, std::size_t intervals) {
    if (intervals < 1)
        throw Error("interval count X must be at least 1");
    std::vector<std::size_t> out;
    out.reserve(intervals);
    for (std::size_t i = 1; i <= intervals; ++i) {
        std::size_t p = (2 * i * n + intervals) / (2 * intervals);
        if (p >= 1 && (out.empty() || p > out.back()))
            out.push_back(p);
    }
    return out;
}

// Positions that split the curve into X intervals of equal GC drop: p_k is the
// first Q whose value is at most materialized[0] * (1 - k/X). N is always the
// last position.
inline std::vector<std::size_t> equi_depth_boundaries(std::span<const double> materialized,
                                                      std::size_t intervals) {
    if (intervals < 1)
        throw Error("interval count X must be at least 1");
    if (materialized.empty())
        throw Error("empty curve");
    const std::size_t n = materialized.size() - 1;
    std::vector<std::size_t> out;
    if (n == 0)
        return out;
    constexpr double eps = 1e-12;
    const double top = materialized[0];
    std::size_t q = 1;
    for (std::size_t k = 1; k <= intervals; ++k) {
        const double level = top * static_cast<double>(intervals - k) / static_cast<double>(intervals);
        while (q <= n && materialized[q] > level + eps)
            ++q;
        if (q > n)
            break;
        if (out.empty() || q > out.back())
            out.push_back(q);
    }
    if (out.empty() || out.back() != n)
        out.push_back(n);
    return out;
}

// Stage 1: equi-length intervals, residual degree re-ranked per interval.
inline QreState stage1_degree_shaping(const Graph& graph, std::size_t intervals,
                                      std::stop_token stop = {}) {
    const std::size_t n = graph.node_count();
    const auto positions = equi_length_positions(n, intervals);
    auto samples = evaluate_samples(
        graph, positions,
        [](const Graph& g, const RemovalState& s, std::size_t) { return degree_scores(g, s); },
        stop);
    const double intact = gc_fraction(graph, RemovalState(n));
    QreState state;
    state.best_materialized = materialize_step(samples.positions, samples.gcs, n, intact);
    state.best_R = compute_R(state.best_materialized, n);
    state.history.push_back(state.best_R);
    return state;
}

// Stage 2 refinement: equi-depth intervals on the best curve so far, pivot
// sampled betweenness re-ranked per interval with fresh pivots, merged into the
// best curve by pointwise minimum.
inline QreState stage2_iteration(const Graph& graph, QreState state, std::size_t intervals,
                                 std::size_t pivots, std::uint64_t iteration_seed,
                                 unsigned threads = 1, std::stop_token stop = {}) {
    if (pivots < 1)
        throw Error("pivot count Y must be at least 1");
    const std::size_t n = graph.node_count();
    if (n == 0) {
        state.history.push_back(state.best_R);
        return state;
    }
    const auto positions = equi_depth_boundaries(state.best_materialized, intervals);
    auto samples = evaluate_samples(
        graph, positions,
        [&](const Graph& g, const RemovalState& s, std::size_t interval) {
            auto sample = draw_pivots(s, std::min(pivots, s.residual_count()),
                                      mix_seed(iteration_seed, interval));
            return betweenness_approx(g, s, sample, threads, stop);
        },
        stop);
    const auto fresh =
        materialize_step(samples.positions, samples.gcs, n, state.best_materialized[0]);
    state.best_materialized = merge_min(state.best_materialized, fresh);
    state.best_R = compute_R(state.best_materialized, n);
    state.history.push_back(state.best_R);
    return state;
}

// Stage 1 followed by Z refinements seeded seed+1 .. seed+Z.
inline QreState qre_estimate(const Graph& graph, const QreParams& params,
                             std::stop_token stop = {}) {
    const std::size_t n = graph.node_count();
    const std::size_t pivots = resolved_pivots(params, n);
    const std::size_t iterations = resolved_iterations(params, n);
    QreState state = stage1_degree_shaping(graph, params.intervals, stop);
    for (std::size_t z = 1; z <= iterations; ++z)
        state = stage2_iteration(graph, std::move(state), params.intervals, pivots,
                                 params.seed + z, params.threads, stop);
    return state;
}

}  // namespace netquake
