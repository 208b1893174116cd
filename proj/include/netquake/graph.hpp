#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace netquake {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Immutable undirected simple graph in CSR form. Neighbor lists are sorted.
class Graph {
public:
    Graph() = default;

    // Builds a simple undirected graph on n nodes. Self-loops, duplicates and
    // reversed duplicates are dropped; direction is discarded.
    static Graph from_edges(std::size_t n, std::span<const Edge> edges,
                            std::vector<std::string> labels = {}) {
        Graph g;
        std::vector<Edge> norm;
        norm.reserve(edges.size());
        for (auto [u, v] : edges) {
            if (u >= n || v >= n)
                throw Error("edge endpoint out of range");
            if (u == v)
                continue;
            norm.emplace_back(std::min(u, v), std::max(u, v));
        }
        std::sort(norm.begin(), norm.end());
        norm.erase(std::unique(norm.begin(), norm.end()), norm.end());

        g.offsets_.assign(n + 1, 0);
        for (auto [u, v] : norm) {
            ++g.offsets_[u + 1];
            ++g.offsets_[v + 1];
        }
        std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
        g.adjacency_.resize(2 * norm.size());
        std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
        for (auto [u, v] : norm) {
            g.adjacency_[fill[u]++] = v;
            g.adjacency_[fill[v]++] = u;
        }
        for (std::size_t i = 0; i < n; ++i)
            std::sort(g.adjacency_.begin() + g.offsets_[i], g.adjacency_.begin() + g.offsets_[i + 1]);

        if (labels.empty()) {
            labels.reserve(n);
            for (std::size_t i = 0; i < n; ++i)
                labels.push_back(std::to_string(i));
        }
        if (labels.size() != n)
            throw Error("label count does not match node count");
        g.labels_ = std::move(labels);
        g.edge_count_ = norm.size();
        return g;
    }

    std::size_t node_count() const noexcept { return labels_.size(); }
    std::size_t edge_count() const noexcept { return edge_count_; }

    std::span<const NodeId> neighbors(NodeId v) const noexcept {
        return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
    }
    std::size_t degree(NodeId v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

    const std::string& label(NodeId v) const { return labels_.at(v); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    // Each undirected edge once, as (u, v) with u < v, in ascending order.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(edge_count_);
        for (NodeId u = 0; u < node_count(); ++u)
            for (NodeId v : neighbors(u))
                if (u < v)
                    out.emplace_back(u, v);
        return out;
    }

private:
    std::vector<std::size_t> offsets_{0};
    std::vector<NodeId> adjacency_;
    std::vector<std::string> labels_;
    std::size_t edge_count_ = 0;
};

// Mutable overlay of removed nodes over an immutable Graph.
class RemovalState {
public:
    RemovalState() = default;
    explicit RemovalState(std::size_t n) : removed_(n, 0) {}

    std::size_t size() const noexcept { return removed_.size(); }
    std::size_t removed_count() const noexcept { return count_; }
    std::size_t residual_count() const noexcept { return removed_.size() - count_; }

    bool is_removed(NodeId v) const noexcept { return removed_[v] != 0; }

    void remove(NodeId v) {
        if (v >= removed_.size())
            throw Error("node id out of range");
        if (!removed_[v]) {
            removed_[v] = 1;
            ++count_;
        }
    }

    // Residual node ids in ascending order.
    std::vector<NodeId> residual_nodes() const {
        std::vector<NodeId> out;
        out.reserve(residual_count());
        for (NodeId v = 0; v < removed_.size(); ++v)
            if (!removed_[v])
                out.push_back(v);
        return out;
    }

private:
    std::vector<std::uint8_t> removed_;
    std::size_t count_ = 0;
};

struct ComponentSummary {
    std::vector<std::size_t> component_sizes;  // descending
    std::size_t gc_size = 0;
    double gc_fraction = 0.0;
};

inline ComponentSummary components_summary(const Graph& graph, const RemovalState& state) {
    const std::size_t n = graph.node_count();
    if (state.size() != n)
        throw Error("removal state does not match graph");
    ComponentSummary out;
    std::vector<std::uint8_t> seen(n, 0);
    std::vector<NodeId> queue;
    queue.reserve(n);
    for (NodeId s = 0; s < n; ++s) {
        if (seen[s] || state.is_removed(s))
            continue;
        queue.clear();
        queue.push_back(s);
        seen[s] = 1;
        for (std::size_t head = 0; head < queue.size(); ++head)
            for (NodeId w : graph.neighbors(queue[head]))
                if (!seen[w] && !state.is_removed(w)) {
                    seen[w] = 1;
                    queue.push_back(w);
                }
        out.component_sizes.push_back(queue.size());
    }
    std::sort(out.component_sizes.begin(), out.component_sizes.end(), std::greater<>());
    if (!out.component_sizes.empty())
        out.gc_size = out.component_sizes.front();
    out.gc_fraction = n == 0 ? 0.0 : static_cast<double>(out.gc_size) / static_cast<double>(n);
    return out;
}

inline double gc_fraction(const Graph& graph, const RemovalState& state) {
    return components_summary(graph, state).gc_fraction;
}

namespace detail {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), NodeId{0});
    }

    NodeId find(NodeId v) noexcept {
        while (parent_[v] != v) {
            parent_[v] = parent_[parent_[v]];
            v = parent_[v];
        }
        return v;
    }

    // Returns the size of the merged set.
    std::size_t unite(NodeId a, NodeId b) noexcept {
        a = find(a);
        b = find(b);
        if (a == b)
            return size_[a];
        if (size_[a] < size_[b])
            std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        return size_[a];
    }

private:
    std::vector<NodeId> parent_;
    std::vector<std::size_t> size_;
};

}  // namespace detail

// Exact giant-component fraction after each prefix of `attack`.
// entry[Q] is the GC fraction after removing attack[0..Q). Nodes are added
// back in reverse order with union-find, so the whole curve costs near-linear
// time.
inline std::vector<double> sq_curve_full(const Graph& graph, std::span<const NodeId> attack) {
    const std::size_t n = graph.node_count();
    std::vector<std::uint8_t> present(n, 1);
    for (NodeId v : attack) {
        if (v >= n)
            throw Error("attack contains an out-of-range node id");
        if (!present[v])
            throw Error("attack contains duplicate node id " + std::to_string(v));
        present[v] = 0;
    }

    detail::DisjointSets sets(n);
    std::size_t gc = 0;
    auto attach = [&](NodeId v) {
        gc = std::max<std::size_t>(gc, 1);
        for (NodeId w : graph.neighbors(v))
            if (present[w])
                gc = std::max(gc, sets.unite(v, w));
    };
    for (NodeId v = 0; v < n; ++v)
        if (present[v])
            attach(v);

    const double denom = n == 0 ? 1.0 : static_cast<double>(n);
    std::vector<double> curve(attack.size() + 1);
    curve[attack.size()] = static_cast<double>(gc) / denom;
    for (std::size_t q = attack.size(); q-- > 0;) {
        present[attack[q]] = 1;
        attach(attack[q]);
        curve[q] = static_cast<double>(gc) / denom;
    }
    return curve;
}

}  // namespace netquake
