#include "netdiff/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <unordered_set>

#include "netdiff/error.hpp"

namespace netdiff {

NodeId LabelMap::intern(std::string_view label) {
    auto it = index_.find(std::string(label));
    if (it != index_.end()) return it->second;
    const auto id = static_cast<NodeId>(labels_.size());
    labels_.emplace_back(label);
    index_.emplace(labels_.back(), id);
    return id;
}

std::optional<NodeId> LabelMap::find(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

namespace {

// Counting-sort arcs by source into CSR, then sort and dedup each row.
void build_csr(std::size_t n, std::vector<Edge>& arcs, std::vector<std::uint64_t>& offsets,
               std::vector<NodeId>& targets) {
    offsets.assign(n + 1, 0);
    for (const auto& [u, v] : arcs) ++offsets[u + 1];
    for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
    targets.resize(arcs.size());
    std::vector<std::uint64_t> cursor(offsets.begin(), offsets.end() - 1);
    for (const auto& [u, v] : arcs) targets[cursor[u]++] = v;

    std::uint64_t write = 0;
    for (std::size_t u = 0; u < n; ++u) {
        const auto begin = targets.begin() + static_cast<std::ptrdiff_t>(offsets[u]);
        const auto end = targets.begin() + static_cast<std::ptrdiff_t>(offsets[u + 1]);
        std::sort(begin, end);
        const auto last = std::unique(begin, end);
        const std::uint64_t start = write;
        for (auto it = begin; it != last; ++it) targets[write++] = *it;
        offsets[u] = start;
    }
    offsets[n] = write;
    targets.resize(write);
    targets.shrink_to_fit();
}

}  // namespace

Graph Graph::from_edges(std::size_t node_count, bool directed, std::span<const Edge> edges,
                        std::shared_ptr<const LabelMap> labels) {
    Graph g;
    g.directed_ = directed;
    g.node_count_ = node_count;
    g.labels_ = std::move(labels);
    if (g.labels_ && g.labels_->size() != node_count)
        throw ParameterError("label map size does not match node count");

    std::vector<Edge> arcs;
    arcs.reserve(directed ? edges.size() : 2 * edges.size());
    for (const auto& [u, v] : edges) {
        if (u >= node_count || v >= node_count) throw ParameterError("edge endpoint out of range");
        if (u == v) {
            ++g.self_loops_dropped_;
            continue;
        }
        arcs.emplace_back(u, v);
        if (!directed) arcs.emplace_back(v, u);
    }
    if (directed) {
        std::vector<Edge> reversed;
        reversed.reserve(arcs.size());
        for (const auto& [u, v] : arcs) reversed.emplace_back(v, u);
        build_csr(node_count, arcs, g.out_offsets_, g.out_targets_);
        build_csr(node_count, reversed, g.in_offsets_, g.in_targets_);
        g.edge_count_ = g.out_targets_.size();
    } else {
        build_csr(node_count, arcs, g.out_offsets_, g.out_targets_);
        g.edge_count_ = g.out_targets_.size() / 2;
    }
    for (NodeId v = 0; v < node_count; ++v) g.max_in_degree_ = std::max(g.max_in_degree_, g.in_degree(v));
    return g;
}

NodeId Graph::arc_source(std::size_t arc) const {
    auto it = std::upper_bound(out_offsets_.begin(), out_offsets_.end(), static_cast<std::uint64_t>(arc));
    return static_cast<NodeId>(std::distance(out_offsets_.begin(), it) - 1);
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    if (u >= node_count_ || v >= node_count_) return false;
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (NodeId u = 0; u < node_count_; ++u)
        for (NodeId v : neighbors(u))
            if (directed_ || u < v) out.emplace_back(u, v);
    return out;
}

std::string Graph::label(NodeId id) const {
    if (labels_) return labels_->label(id);
    return std::to_string(id);
}

std::optional<NodeId> Graph::find_node(std::string_view label) const {
    if (labels_) return labels_->find(label);
    NodeId id = 0;
    auto [ptr, ec] = std::from_chars(label.data(), label.data() + label.size(), id);
    if (ec != std::errc{} || ptr != label.data() + label.size() || id >= node_count_) return std::nullopt;
    return id;
}

std::string Graph::digest() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&h](std::uint64_t value) {
        for (int i = 0; i < 8; ++i) {
            h ^= (value >> (8 * i)) & 0xFFu;
            h *= 0x100000001b3ULL;
        }
    };
    feed(directed_ ? 1 : 0);
    feed(node_count_);
    for (auto off : out_offsets_) feed(off);
    for (auto t : out_targets_) feed(t);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; };
    while (i < line.size()) {
        while (i < line.size() && is_space(line[i])) ++i;
        std::size_t j = i;
        while (j < line.size() && !is_space(line[j])) ++j;
        if (j > i) tokens.push_back(line.substr(i, j - i));
        i = j;
    }
    return tokens;
}

Graph load_edge_list(std::string_view text, bool directed) {
    auto labels = std::make_shared<LabelMap>();
    std::vector<Edge> edges;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        auto line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;
        auto tokens = split_tokens(line);
        if (tokens.empty() || tokens.front().front() == '#') continue;
        if (tokens.size() < 2) throw ParseError("expected at least two tokens", line_no);
        const NodeId u = labels->intern(tokens[0]);
        const NodeId v = labels->intern(tokens[1]);
        edges.emplace_back(u, v);
    }
    const auto n = labels->size();
    return Graph::from_edges(n, directed, edges, std::move(labels));
}

std::string serialize_edge_list(const Graph& g) {
    std::string out;
    out += g.directed() ? "# directed\n" : "# undirected\n";
    out += "# nodes " + std::to_string(g.node_count()) + "\n";
    auto key = [&g](NodeId u, NodeId v) {
        if (!g.directed() && v < u) std::swap(u, v);
        return (static_cast<std::uint64_t>(u) << 32) | v;
    };
    auto line = [&out](NodeId u, NodeId v) {
        out += std::to_string(u);
        out += ' ';
        out += std::to_string(v);
        out += '\n';
    };
    std::unordered_set<std::uint64_t> emitted;
    for (NodeId i = 0; i < g.node_count(); ++i) {
        // Every id below i is already introduced; pull i in through its smallest
        // such neighbor so that first-seen order reproduces the dense ids.
        std::optional<Edge> intro;
        auto in = g.in_neighbors(i);
        auto outn = g.neighbors(i);
        if (!in.empty() && in.front() < i) intro = Edge{in.front(), i};
        if (!outn.empty() && outn.front() < i && (!intro || outn.front() < intro->first)) intro = Edge{i, outn.front()};
        if (intro) {
            line(intro->first, intro->second);
            emitted.insert(key(intro->first, intro->second));
        } else {
            line(i, i);
        }
    }
    for (const auto& [u, v] : g.edges())
        if (!emitted.contains(key(u, v))) line(u, v);
    return out;
}

}  // namespace netdiff
