#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "netquake/netquake.hpp"

namespace fixture {

using netquake::Edge;
using netquake::Graph;
using netquake::NodeId;

// Two hubs c and f joined through the chain d-e:
//   a-c, b-c, c-d, d-e, e-f, f-g, f-h, g-i
// Dense ids follow first appearance: a0 c1 b2 d3 e4 f5 g6 h7 i8.
inline constexpr const char* kTwoHubText = "a c\nb c\nc d\nd e\ne f\nf g\nf h\ng i\n";

inline Graph two_hub() {
    std::istringstream in(kTwoHubText);
    return netquake::load_edge_list(in);
}

inline NodeId id_of(const Graph& g, const std::string& label) {
    for (NodeId v = 0; v < g.node_count(); ++v)
        if (g.label(v) == label)
            return v;
    throw netquake::Error("no node " + label);
}

// Hub 0 with leaves 1..leaves.
inline Graph star(std::size_t leaves) {
    std::vector<Edge> edges;
    for (NodeId v = 1; v <= leaves; ++v)
        edges.emplace_back(0, v);
    return Graph::from_edges(leaves + 1, edges);
}

inline Graph path(std::size_t n) {
    std::vector<Edge> edges;
    for (NodeId v = 1; v < n; ++v)
        edges.emplace_back(v - 1, v);
    return Graph::from_edges(n, edges);
}

inline Graph cycle(std::size_t n) {
    std::vector<Edge> edges;
    for (NodeId v = 0; v < n; ++v)
        edges.emplace_back(v, static_cast<NodeId>((v + 1) % n));
    return Graph::from_edges(n, edges);
}

inline Graph complete(std::size_t n) {
    std::vector<Edge> edges;
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = u + 1; v < n; ++v)
            edges.emplace_back(u, v);
    return Graph::from_edges(n, edges);
}

inline std::string data_path(const std::string& file) {
    return std::string(NETQUAKE_DATA_DIR) + "/" + file;
}

}  // namespace fixture
