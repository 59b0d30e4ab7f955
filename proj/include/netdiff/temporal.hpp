#pragma once

#include <compare>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "netdiff/graph.hpp"
#include "netdiff/types.hpp"

namespace netdiff {

/// Half-open presence interval [start, end).
struct PresenceInterval {
    Timestamp start = 0;
    Timestamp end = 0;

    bool contains(Timestamp t) const noexcept { return start <= t && t < end; }
    auto operator<=>(const PresenceInterval&) const = default;
};

/// Sorted, disjoint, maximal interval set: touching intervals are merged.
class IntervalList {
public:
    void insert(PresenceInterval interval);
    bool contains(Timestamp t) const;
    /// True when some interval meets the half-open window [from, to).
    bool intersects(Timestamp from, Timestamp to) const;
    std::span<const PresenceInterval> intervals() const noexcept { return intervals_; }
    bool empty() const noexcept { return intervals_.empty(); }

    bool operator==(const IntervalList&) const = default;

private:
    std::vector<PresenceInterval> intervals_;
};

struct Snapshot {
    Timestamp id = 0;
    Graph graph;
};

/// Ordered sequence of static graphs over one shared node id space.
class SnapshotSequence {
public:
    SnapshotSequence() = default;
    explicit SnapshotSequence(std::vector<Snapshot> snapshots);

    /// Appends a snapshot; ids must increase and node counts must agree.
    void push_back(Timestamp id, Graph graph);

    std::size_t size() const noexcept { return snapshots_.size(); }
    bool empty() const noexcept { return snapshots_.empty(); }
    const Snapshot& operator[](std::size_t k) const { return snapshots_.at(k); }
    std::span<const Snapshot> snapshots() const noexcept { return snapshots_; }
    std::size_t node_count() const noexcept { return snapshots_.empty() ? 0 : snapshots_.front().graph.node_count(); }
    bool directed() const noexcept { return !snapshots_.empty() && snapshots_.front().graph.directed(); }
    std::string digest() const;

private:
    std::vector<Snapshot> snapshots_;
};

/// Temporal network whose edges are interactions carrying presence intervals.
///
/// Mutable while being built; hand it to a simulation as
/// `std::shared_ptr<const TemporalGraph>` once complete.
class TemporalGraph {
public:
    explicit TemporalGraph(bool directed = false) : directed_(directed) {}

    bool directed() const noexcept { return directed_; }
    std::size_t node_count() const noexcept { return lifetimes_.size(); }
    std::size_t interaction_count() const noexcept { return interactions_.size(); }

    /// Returns the id of `label`, creating the node on first sight.
    NodeId add_node(std::string_view label);
    /// Makes ids 0..id exist.
    void ensure_node(NodeId id);

    /// Records presence of (u,v) at the single instant t, i.e. [t, t+1).
    void add_interaction(NodeId u, NodeId v, Timestamp t) { add_interaction(u, v, t, t + 1); }
    /// Records presence of (u,v) over [start, end). Throws ParameterError if start >= end.
    void add_interaction(NodeId u, NodeId v, Timestamp start, Timestamp end);
    /// Extends a node lifetime without any interaction.
    void add_node_presence(NodeId u, Timestamp start, Timestamp end);

    /// Presence intervals of (u,v), or nullptr when the pair never interacts.
    const IntervalList* intervals(NodeId u, NodeId v) const;
    const IntervalList& lifetime(NodeId u) const { return lifetimes_.at(u); }
    const std::map<Edge, IntervalList>& interactions() const noexcept { return interactions_; }

    /// Observed timestamp domain, ascending.
    const std::vector<Timestamp>& timestamps() const noexcept { return timestamps_; }

    /// Static graph of the interactions alive at t.
    Graph slice(Timestamp t) const;
    /// Union of the interactions alive anywhere in [from, to). Throws ParameterError if from > to.
    Graph flatten(Timestamp from, Timestamp to) const;
    /// Flattening over the whole observed domain.
    Graph flatten() const;
    /// One snapshot per observed timestamp, each equal to slice(t).
    SnapshotSequence snapshots() const;

    std::string label(NodeId id) const;
    std::optional<NodeId> find_node(std::string_view label) const;
    std::string digest() const;

private:
    Edge key(NodeId u, NodeId v) const { return (directed_ || u <= v) ? Edge{u, v} : Edge{v, u}; }
    void mark_timestamps(Timestamp start, Timestamp end);
    template <class Pred>
    Graph collect(Pred alive) const;
    std::shared_ptr<const LabelMap> frozen_labels() const;

    bool directed_;
    std::map<Edge, IntervalList> interactions_;
    std::vector<IntervalList> lifetimes_;
    std::vector<Timestamp> timestamps_;
    std::shared_ptr<LabelMap> labels_;
};

/// Parses lines "u v t" or "u v t_start t_end" ('#' comments allowed).
TemporalGraph load_temporal_edge_list(std::string_view text, bool directed);

/// Parses edge-list sections introduced by "# snapshot <k>" headers. All
/// snapshots share one label map, so a token names the same node everywhere.
SnapshotSequence load_snapshots(std::string_view text, bool directed);

}  // namespace netdiff
