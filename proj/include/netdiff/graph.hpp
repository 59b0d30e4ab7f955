#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "netdiff/types.hpp"

namespace netdiff {

/// Bidirectional map between original node tokens and dense ids.
class LabelMap {
public:
    /// Returns the id of `label`, assigning the next dense id on first sight.
    NodeId intern(std::string_view label);
    std::optional<NodeId> find(std::string_view label) const;
    const std::string& label(NodeId id) const { return labels_.at(id); }
    std::size_t size() const noexcept { return labels_.size(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, NodeId> index_;
};

using Edge = std::pair<NodeId, NodeId>;

/// Immutable compressed adjacency over dense node ids 0..node_count-1.
///
/// Neighbor lists are sorted and duplicate free. Undirected edges are stored
/// once logically and exposed from both endpoints. For directed graphs both
/// out- and in-adjacency are kept; models read `in_neighbors` to find the
/// nodes that can influence a node, which for undirected graphs is simply the
/// neighborhood.
class Graph {
public:
    Graph() = default;

    /// Builds from an arbitrary edge list. Self-loops are dropped (and counted),
    /// duplicates collapsed. `labels`, when given, must cover node_count ids.
    static Graph from_edges(std::size_t node_count, bool directed, std::span<const Edge> edges,
                            std::shared_ptr<const LabelMap> labels = nullptr);

    bool directed() const noexcept { return directed_; }
    std::size_t node_count() const noexcept { return node_count_; }
    std::size_t edge_count() const noexcept { return edge_count_; }
    std::size_t self_loops_dropped() const noexcept { return self_loops_dropped_; }

    std::span<const NodeId> neighbors(NodeId u) const {
        return {out_targets_.data() + out_offsets_[u], out_targets_.data() + out_offsets_[u + 1]};
    }
    std::span<const NodeId> in_neighbors(NodeId v) const {
        const auto& off = directed_ ? in_offsets_ : out_offsets_;
        const auto& tgt = directed_ ? in_targets_ : out_targets_;
        return {tgt.data() + off[v], tgt.data() + off[v + 1]};
    }
    std::size_t degree(NodeId u) const { return out_offsets_[u + 1] - out_offsets_[u]; }
    std::size_t in_degree(NodeId v) const { return in_neighbors(v).size(); }
    std::size_t max_in_degree() const noexcept { return max_in_degree_; }

    /// Position of v's first in-arc in the flat in-arc array; edge attributes
    /// are stored aligned with that array.
    std::size_t in_arc_offset(NodeId v) const { return (directed_ ? in_offsets_ : out_offsets_)[v]; }
    std::size_t in_arc_count() const noexcept { return directed_ ? in_targets_.size() : out_targets_.size(); }

    /// Out-arcs form a flat array: undirected edges appear twice, once per direction.
    std::size_t arc_count() const noexcept { return out_targets_.size(); }
    NodeId arc_source(std::size_t arc) const;
    NodeId arc_target(std::size_t arc) const { return out_targets_[arc]; }

    bool has_edge(NodeId u, NodeId v) const;

    /// Canonical edge list: (u,v) with u<v for undirected graphs, sorted.
    std::vector<Edge> edges() const;

    std::string label(NodeId id) const;
    std::optional<NodeId> find_node(std::string_view label) const;
    const std::shared_ptr<const LabelMap>& labels() const noexcept { return labels_; }
    bool has_custom_labels() const noexcept { return labels_ != nullptr; }

    /// Stable 64-bit FNV-1a digest over directedness, node count and adjacency, as hex.
    std::string digest() const;

private:
    bool directed_ = false;
    std::size_t node_count_ = 0;
    std::size_t edge_count_ = 0;
    std::size_t self_loops_dropped_ = 0;
    std::size_t max_in_degree_ = 0;
    std::vector<std::uint64_t> out_offsets_{0};
    std::vector<NodeId> out_targets_;
    std::vector<std::uint64_t> in_offsets_;
    std::vector<NodeId> in_targets_;
    std::shared_ptr<const LabelMap> labels_;
};

/// Parses a whitespace separated edge list ("u v" per line, '#' comments).
/// Tokens map to dense ids in first-seen order; tokens beyond the second are ignored.
Graph load_edge_list(std::string_view text, bool directed);

/// Emits the graph as a dense-id edge list that `load_edge_list` maps back
/// onto the same ids. Nodes that no earlier line can introduce are declared
/// with a self-loop line, which the loader turns into a bare node.
std::string serialize_edge_list(const Graph& g);

/// Splits a line into whitespace separated tokens.
std::vector<std::string_view> split_tokens(std::string_view line);

}  // namespace netdiff
