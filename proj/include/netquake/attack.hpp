#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <stop_token>
#include <string>
#include <utility>
#include <vector>

#include "netquake/centrality.hpp"
#include "netquake/graph.hpp"

namespace netquake {

inline void throw_if_stopped(const std::stop_token& stop) {
    if (stop.stop_requested())
        throw StopRequested();
}

enum class Metric { Degree, Betweenness, ApproxBetweenness, PageRank, CollectiveInfluence };
enum class AttackMode { Static, Interactive };

struct StrategySpec {
    Metric metric = Metric::Degree;
    AttackMode mode = AttackMode::Static;
    PageRankOptions pagerank{};
    std::size_t pivots = 8;     // ApproxBetweenness only
    unsigned ball_radius = 2;   // CollectiveInfluence only
    std::uint64_t seed = 0;
    std::size_t batch = 1;      // removals between re-rankings (interactive)
    unsigned threads = 1;

    void validate() const {
        if (metric == Metric::CollectiveInfluence && ball_radius < 1)
            throw Error("collective influence needs ball radius >= 1");
        if (metric == Metric::ApproxBetweenness && pivots < 1)
            throw Error("approximate betweenness needs at least one pivot");
        if (batch < 1)
            throw Error("batch size must be at least 1");
    }

    // Short technique name, e.g. "DEG", "IBETW", "ICI2".
    std::string descriptor() const {
        std::string name;
        switch (metric) {
            case Metric::Degree: name = "DEG"; break;
            case Metric::Betweenness: name = "BETW"; break;
            case Metric::ApproxBetweenness: name = "ABET"; break;
            case Metric::PageRank: name = "PR"; break;
            case Metric::CollectiveInfluence: name = "CI" + std::to_string(ball_radius); break;
        }
        return mode == AttackMode::Interactive ? "I" + name : name;
    }
};

struct AttackSequence {
    std::vector<NodeId> order;
    std::string origin;
};

// Sampled curve plus its materialized step function over Q = 0..N and R.
struct RobustnessCurve {
    std::vector<std::size_t> positions;
    std::vector<double> gcs;
    std::vector<double> materialized;
    double R = 0.0;
};

// 64-bit mix used to derive independent seeds from (seed, index).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Scores of the strategy's metric on the current residual graph. `round`
// distinguishes successive re-rankings so sampled metrics draw fresh pivots.
inline ScoreVector strategy_scores(const Graph& graph, const RemovalState& state,
                                   const StrategySpec& spec, std::uint64_t round = 0,
                                   std::stop_token stop = {}) {
    switch (spec.metric) {
        case Metric::Degree:
            return degree_scores(graph, state);
        case Metric::Betweenness:
            return betweenness_exact(graph, state, spec.threads, stop);
        case Metric::ApproxBetweenness: {
            const std::size_t residual = state.residual_count();
            if (residual == 0)
                return ScoreVector(graph.node_count(), kRemovedScore);
            auto sample = draw_pivots(state, std::min(spec.pivots, residual),
                                      mix_seed(spec.seed, round));
            return betweenness_approx(graph, state, sample, spec.threads, stop);
        }
        case Metric::PageRank:
            return pagerank_scores(graph, state, spec.pagerank);
        case Metric::CollectiveInfluence:
            return collective_influence(graph, state, spec.ball_radius);
    }
    throw Error("unknown metric");
}

inline AttackSequence static_attack(const Graph& graph, const StrategySpec& spec,
                                    std::stop_token stop = {}) {
    spec.validate();
    RemovalState intact(graph.node_count());
    return {rank_descending(strategy_scores(graph, intact, spec, 0, stop)), spec.descriptor()};
}

namespace detail {

// Residual degree ranking kept in an ordered set; equivalent to recomputing
// degree_scores after every removal.
inline std::vector<NodeId> interactive_degree_order(const Graph& graph,
                                                    const std::stop_token& stop) {
    const std::size_t n = graph.node_count();
    std::vector<std::size_t> deg(n);
    std::set<std::pair<long long, NodeId>> queue;
    for (NodeId v = 0; v < n; ++v) {
        deg[v] = graph.degree(v);
        queue.emplace(-static_cast<long long>(deg[v]), v);
    }
    std::vector<std::uint8_t> removed(n, 0);
    std::vector<NodeId> order;
    order.reserve(n);
    while (!queue.empty()) {
        if ((order.size() & 1023) == 0)
            throw_if_stopped(stop);
        NodeId v = queue.begin()->second;
        queue.erase(queue.begin());
        removed[v] = 1;
        order.push_back(v);
        for (NodeId w : graph.neighbors(v)) {
            if (removed[w])
                continue;
            queue.erase({-static_cast<long long>(deg[w]), w});
            --deg[w];
            queue.emplace(-static_cast<long long>(deg[w]), w);
        }
    }
    return order;
}

// First element of rank_descending(scores) without sorting.
inline NodeId top_ranked(const ScoreVector& scores) {
    NodeId best = 0;
    bool found = false;
    for (NodeId v = 0; v < scores.size(); ++v) {
        if (scores[v] == kRemovedScore)
            continue;
        if (!found || scores[v] > scores[best]) {
            best = v;
            found = true;
        }
    }
    if (!found)
        throw Error("no residual node to rank");
    return best;
}

// Exact betweenness re-ranked after every removal. Only the component that
// contained the removed node is recomputed; sources are processed in
// ascending id, so scores match a full recomputation bit for bit.
inline std::vector<NodeId> interactive_betweenness_order(const Graph& graph, unsigned threads,
                                                         const std::stop_token& stop) {
    const std::size_t n = graph.node_count();
    RemovalState state(n);
    ScoreVector scores = betweenness_exact(graph, state, threads, stop);
    std::vector<NodeId> order;
    order.reserve(n);
    std::vector<std::uint8_t> seen(n, 0);
    std::vector<NodeId> affected;
    while (order.size() < n) {
        throw_if_stopped(stop);
        NodeId v = top_ranked(scores);
        order.push_back(v);
        state.remove(v);
        scores[v] = kRemovedScore;

        affected.clear();
        for (NodeId s : graph.neighbors(v)) {
            if (state.is_removed(s) || seen[s])
                continue;
            std::size_t head = affected.size();
            affected.push_back(s);
            seen[s] = 1;
            for (; head < affected.size(); ++head)
                for (NodeId w : graph.neighbors(affected[head]))
                    if (!state.is_removed(w) && !seen[w]) {
                        seen[w] = 1;
                        affected.push_back(w);
                    }
        }
        for (NodeId w : affected)
            seen[w] = 0;
        std::sort(affected.begin(), affected.end());
        auto acc = dependency_sum(graph, state, affected, threads, stop);
        for (NodeId w : affected)
            scores[w] = acc[w] / 2.0;
    }
    return order;
}

}  // namespace detail

// Re-ranks the residual graph after every `spec.batch` removals and removes
// the top-ranked nodes until the graph is empty.
inline AttackSequence interactive_attack(const Graph& graph, const StrategySpec& spec,
                                         std::stop_token stop = {}) {
    spec.validate();
    AttackSequence out{{}, spec.descriptor()};
    if (spec.batch == 1 && spec.metric == Metric::Degree) {
        out.order = detail::interactive_degree_order(graph, stop);
        return out;
    }
    if (spec.batch == 1 && spec.metric == Metric::Betweenness) {
        out.order = detail::interactive_betweenness_order(graph, spec.threads, stop);
        return out;
    }
    const std::size_t n = graph.node_count();
    RemovalState state(n);
    out.order.reserve(n);
    for (std::uint64_t round = 0; state.removed_count() < n; ++round) {
        throw_if_stopped(stop);
        auto ranking = rank_descending(strategy_scores(graph, state, spec, round, stop));
        for (std::size_t i = 0; i < spec.batch && i < ranking.size(); ++i) {
            state.remove(ranking[i]);
            out.order.push_back(ranking[i]);
        }
    }
    return out;
}

// Walks the sample positions left to right. At the start of every interval the
// provider re-ranks the residual graph; nodes are then removed in that order up
// to the interval end, where the GC fraction is recorded.
//
// provider(graph, state, interval_index) -> ScoreVector
template <class RankingProvider>
RobustnessCurve evaluate_samples(const Graph& graph, std::span<const std::size_t> positions,
                                 RankingProvider&& provider, std::stop_token stop = {}) {
    const std::size_t n = graph.node_count();
    for (std::size_t i = 0; i < positions.size(); ++i) {
        if (positions[i] < 1 || positions[i] > n)
            throw Error("sample positions must lie in [1, N]");
        if (i > 0 && positions[i] <= positions[i - 1])
            throw Error("sample positions must be strictly increasing");
    }
    RobustnessCurve curve;
    curve.positions.assign(positions.begin(), positions.end());
    curve.gcs.reserve(positions.size());
    RemovalState state(n);
    for (std::size_t i = 0; i < positions.size(); ++i) {
        throw_if_stopped(stop);
        const ScoreVector scores = provider(graph, std::as_const(state), i);
        const auto ranking = rank_descending(scores);
        for (std::size_t j = 0; state.removed_count() < positions[i]; ++j) {
            if (j >= ranking.size())
                throw Error("ranking provider returned too few residual nodes");
            state.remove(ranking[j]);
        }
        curve.gcs.push_back(gc_fraction(graph, state));
    }
    return curve;
}

// Step function over Q = 0..N: out[Q] = gcs[i] for the largest i with
// positions[i] <= Q, and intact_fraction before the first sample.
inline std::vector<double> materialize_step(std::span<const std::size_t> positions,
                                            std::span<const double> gcs, std::size_t n,
                                            double intact_fraction) {
    if (positions.size() != gcs.size())
        throw Error("positions and gcs differ in length");
    std::vector<double> out(n + 1, intact_fraction);
    std::size_t next = 0;
    double level = intact_fraction;
    for (std::size_t q = 1; q <= n; ++q) {
        while (next < positions.size() && positions[next] <= q) {
            if (positions[next] == 0 || (next > 0 && positions[next] <= positions[next - 1]))
                throw Error("positions must be strictly increasing in [1, N]");
            level = gcs[next++];
        }
        out[q] = level;
    }
    if (next < positions.size())
        throw Error("position beyond N");
    return out;
}

inline std::vector<double> merge_min(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw Error("curves differ in length");
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = std::min(a[i], b[i]);
    return out;
}

// R = (1/N) * sum_{Q=1..N} materialized[Q].
inline double compute_R(std::span<const double> materialized, std::size_t n) {
    if (materialized.size() != n + 1)
        throw Error("materialized curve must have N+1 entries");
    if (n == 0)
        return 0.0;
    double sum = 0.0;
    for (std::size_t q = 1; q <= n; ++q)
        sum += materialized[q];
    return sum / static_cast<double>(n);
}

inline AttackSequence build_attack(const Graph& graph, const StrategySpec& spec,
                                   std::stop_token stop = {}) {
    return spec.mode == AttackMode::Static ? static_attack(graph, spec, stop)
                                           : interactive_attack(graph, spec, stop);
}

// Baselines use the exact dense curve, one sample per Q.
inline RobustnessCurve curve_for_attack(const Graph& graph, const AttackSequence& attack) {
    const std::size_t n = graph.node_count();
    RobustnessCurve curve;
    curve.materialized = sq_curve_full(graph, attack.order);
    // A partial attack holds its last value up to N.
    curve.materialized.resize(n + 1, curve.materialized.back());
    curve.positions.resize(n);
    curve.gcs.resize(n);
    for (std::size_t q = 1; q <= n; ++q) {
        curve.positions[q - 1] = q;
        curve.gcs[q - 1] = curve.materialized[q];
    }
    curve.R = compute_R(curve.materialized, n);
    return curve;
}

inline RobustnessCurve run_strategy(const Graph& graph, const StrategySpec& spec,
                                    std::stop_token stop = {}) {
    return curve_for_attack(graph, build_attack(graph, spec, stop));
}

}  // namespace netquake
