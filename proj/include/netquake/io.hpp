#pragma once

#include <cctype>
#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "netquake/graph.hpp"

namespace netquake {

struct ParseError : Error {
    ParseError(const std::string& what, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + what), line(line) {}
    std::size_t line;
};

struct EdgeListOptions {
    // A leading "# nodes <N>" comment declares nodes "0".."N-1" up front so
    // isolated nodes survive a write/read cycle.
    bool honor_node_hint = true;
};

namespace detail {

class LabelIndex {
public:
    NodeId intern(const std::string& token) {
        auto [it, inserted] = ids_.try_emplace(token, static_cast<NodeId>(labels_.size()));
        if (inserted)
            labels_.push_back(token);
        return it->second;
    }
    std::size_t size() const noexcept { return labels_.size(); }
    std::vector<std::string> release() { return std::move(labels_); }

private:
    std::unordered_map<std::string, NodeId> ids_;
    std::vector<std::string> labels_;
};

inline bool parse_node_hint(const std::string& line, std::size_t& n) {
    std::istringstream in(line.substr(1));
    std::string key;
    std::string value;
    if (!(in >> key >> value) || key != "nodes")
        return false;
    std::string rest;
    if (in >> rest)
        return false;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
    return ec == std::errc{} && ptr == value.data() + value.size();
}

}  // namespace detail

// Whitespace-separated edge list. Lines starting with '#' or '%' are comments.
// Tokens are arbitrary strings mapped to dense ids in first-appearance order.
inline Graph load_edge_list(std::istream& in, const EdgeListOptions& options = {}) {
    detail::LabelIndex index;
    std::vector<Edge> edges;
    std::string line;
    std::size_t line_no = 0;
    bool seen_data = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos)
            continue;
        if (line[first] == '#' || line[first] == '%') {
            std::size_t hinted = 0;
            if (options.honor_node_hint && !seen_data && index.size() == 0 &&
                line[first] == '#' && detail::parse_node_hint(line.substr(first), hinted)) {
                for (std::size_t i = 0; i < hinted; ++i)
                    index.intern(std::to_string(i));
            }
            continue;
        }
        std::istringstream tokens(line);
        std::string a, b, extra;
        if (!(tokens >> a >> b) || (tokens >> extra))
            throw ParseError("expected exactly two node tokens", line_no);
        seen_data = true;
        NodeId u = index.intern(a);
        NodeId v = index.intern(b);
        edges.emplace_back(u, v);
    }
    if (edges.empty() && index.size() == 0)
        throw Error("no edges");
    const std::size_t n = index.size();
    return Graph::from_edges(n, edges, index.release());
}

// Writes "# nodes N" followed by one "u v" line per edge using dense ids.
inline void write_edge_list(const Graph& graph, std::ostream& out) {
    out << "# nodes " << graph.node_count() << '\n';
    for (auto [u, v] : graph.edges())
        out << u << ' ' << v << '\n';
}

namespace detail {

// Minimal GML reader: key/value pairs where a value is a number, a quoted
// string or a bracketed list.
class GmlReader {
public:
    explicit GmlReader(std::istream& in) : text_(std::istreambuf_iterator<char>(in), {}) {}

    struct Value;
    using List = std::vector<std::pair<std::string, Value>>;
    struct Value {
        std::string scalar;
        List list;
        bool is_list = false;
        std::size_t line = 0;
    };

    List parse_document() {
        List top = parse_list(false);
        skip_space();
        if (pos_ < text_.size())
            throw ParseError("unexpected ']'", line_);
        return top;
    }

private:
    void skip_space() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '\n') {
                ++line_;
                ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n')
                    ++pos_;
            } else {
                break;
            }
        }
    }

    std::string read_key() {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        if (start == pos_)
            throw ParseError(std::string("unexpected character '") + text_[pos_] + "'", line_);
        return text_.substr(start, pos_ - start);
    }

    Value read_value() {
        skip_space();
        if (pos_ >= text_.size())
            throw ParseError("missing value at end of input", line_);
        Value v;
        v.line = line_;
        char c = text_[pos_];
        if (c == '[') {
            ++pos_;
            v.is_list = true;
            v.list = parse_list(true);
        } else if (c == '"') {
            std::size_t start_line = line_;
            std::size_t end = ++pos_;
            while (end < text_.size() && text_[end] != '"') {
                if (text_[end] == '\n')
                    ++line_;
                ++end;
            }
            if (end >= text_.size())
                throw ParseError("unterminated string", start_line);
            v.scalar = text_.substr(pos_, end - pos_);
            pos_ = end + 1;
        } else if (c == ']') {
            throw ParseError("missing value before ']'", line_);
        } else {
            std::size_t start = pos_;
            while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
                   text_[pos_] != '[' && text_[pos_] != ']')
                ++pos_;
            v.scalar = text_.substr(start, pos_ - start);
        }
        return v;
    }

    List parse_list(bool nested) {
        List items;
        std::size_t open_line = line_;
        for (;;) {
            skip_space();
            if (pos_ >= text_.size()) {
                if (nested)
                    throw ParseError("unbalanced '[' (missing ']')", open_line);
                return items;
            }
            if (text_[pos_] == ']') {
                if (!nested)
                    return items;
                ++pos_;
                return items;
            }
            std::string key = read_key();
            items.emplace_back(std::move(key), read_value());
        }
    }

    std::string text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
};

inline long long gml_integer(const GmlReader::Value& v, const char* what) {
    long long out = 0;
    const auto& s = v.scalar;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (v.is_list || ec != std::errc{} || ptr != s.data() + s.size())
        throw ParseError(std::string("expected integer ") + what, v.line);
    return out;
}

}  // namespace detail

// GML subset: `graph [ node [ id <int> ... ] edge [ source <int> target <int> ... ] ]`.
// Other attributes are ignored. Node labels are the GML ids as text.
inline Graph load_gml(std::istream& in) {
    detail::GmlReader reader(in);
    auto doc = reader.parse_document();
    const detail::GmlReader::Value* graph_block = nullptr;
    for (const auto& [key, value] : doc)
        if (key == "graph" && value.is_list) {
            graph_block = &value;
            break;
        }
    if (!graph_block)
        throw Error("no graph block");

    std::map<long long, NodeId> dense;
    std::vector<std::string> labels;
    std::vector<std::pair<long long, long long>> raw_edges;
    std::vector<std::size_t> edge_lines;
    for (const auto& [key, value] : graph_block->list) {
        if (key == "node" && value.is_list) {
            const detail::GmlReader::Value* id = nullptr;
            for (const auto& [k, v] : value.list)
                if (k == "id")
                    id = &v;
            if (!id)
                throw ParseError("node without id", value.line);
            long long gml_id = detail::gml_integer(*id, "node id");
            auto [it, inserted] = dense.try_emplace(gml_id, static_cast<NodeId>(labels.size()));
            if (!inserted)
                throw ParseError("duplicate node id " + std::to_string(gml_id), id->line);
            labels.push_back(std::to_string(gml_id));
        } else if (key == "edge" && value.is_list) {
            const detail::GmlReader::Value* src = nullptr;
            const detail::GmlReader::Value* dst = nullptr;
            for (const auto& [k, v] : value.list) {
                if (k == "source")
                    src = &v;
                else if (k == "target")
                    dst = &v;
            }
            if (!src || !dst)
                throw ParseError("edge without source/target", value.line);
            raw_edges.emplace_back(detail::gml_integer(*src, "edge source"),
                                   detail::gml_integer(*dst, "edge target"));
            edge_lines.push_back(value.line);
        }
    }

    std::vector<Edge> edges;
    edges.reserve(raw_edges.size());
    for (std::size_t i = 0; i < raw_edges.size(); ++i) {
        auto s = dense.find(raw_edges[i].first);
        auto t = dense.find(raw_edges[i].second);
        if (s == dense.end() || t == dense.end())
            throw ParseError("edge references undeclared node id " +
                                 std::to_string(s == dense.end() ? raw_edges[i].first
                                                                 : raw_edges[i].second),
                             edge_lines[i]);
        edges.emplace_back(s->second, t->second);
    }
    const std::size_t n = labels.size();
    return Graph::from_edges(n, edges, std::move(labels));
}

}  // namespace netquake
