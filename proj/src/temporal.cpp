#include "netdiff/temporal.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>

#include "netdiff/error.hpp"

namespace netdiff {

void IntervalList::insert(PresenceInterval interval) {
    // First interval that could touch or overlap: its end >= interval.start.
    auto first = std::lower_bound(intervals_.begin(), intervals_.end(), interval.start,
                                  [](const PresenceInterval& iv, Timestamp t) { return iv.end < t; });
    auto last = first;
    while (last != intervals_.end() && last->start <= interval.end) {
        interval.start = std::min(interval.start, last->start);
        interval.end = std::max(interval.end, last->end);
        ++last;
    }
    first = intervals_.erase(first, last);
    intervals_.insert(first, interval);
}

bool IntervalList::contains(Timestamp t) const {
    auto it = std::upper_bound(intervals_.begin(), intervals_.end(), t,
                               [](Timestamp value, const PresenceInterval& iv) { return value < iv.start; });
    return it != intervals_.begin() && std::prev(it)->contains(t);
}

bool IntervalList::intersects(Timestamp from, Timestamp to) const {
    if (from >= to) return false;
    auto it = std::lower_bound(intervals_.begin(), intervals_.end(), from,
                               [](const PresenceInterval& iv, Timestamp t) { return iv.end <= t; });
    return it != intervals_.end() && it->start < to;
}

SnapshotSequence::SnapshotSequence(std::vector<Snapshot> snapshots) {
    for (auto& s : snapshots) push_back(s.id, std::move(s.graph));
}

void SnapshotSequence::push_back(Timestamp id, Graph graph) {
    if (!snapshots_.empty()) {
        if (id <= snapshots_.back().id) throw ParameterError("snapshot ids must be strictly increasing");
        if (graph.node_count() != node_count())
            throw ParameterError("snapshots must share one node id space");
        if (graph.directed() != directed()) throw ParameterError("snapshots must agree on directedness");
    }
    snapshots_.push_back(Snapshot{id, std::move(graph)});
}

std::string SnapshotSequence::digest() const {
    std::string joined;
    for (const auto& s : snapshots_) joined += std::to_string(s.id) + ":" + s.graph.digest() + ";";
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : joined) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

NodeId TemporalGraph::add_node(std::string_view label) {
    if (!labels_) {
        labels_ = std::make_shared<LabelMap>();
        for (NodeId i = 0; i < lifetimes_.size(); ++i) labels_->intern(std::to_string(i));
    } else if (labels_.use_count() > 1) {
        labels_ = std::make_shared<LabelMap>(*labels_);
    }
    const NodeId id = labels_->intern(label);
    if (id >= lifetimes_.size()) lifetimes_.resize(id + 1);
    return id;
}

void TemporalGraph::ensure_node(NodeId id) {
    if (id < lifetimes_.size()) return;
    if (labels_) {
        if (labels_.use_count() > 1) labels_ = std::make_shared<LabelMap>(*labels_);
        while (labels_->size() <= id) labels_->intern(std::to_string(labels_->size()));
    }
    lifetimes_.resize(id + 1);
}

void TemporalGraph::mark_timestamps(Timestamp start, Timestamp end) {
    for (Timestamp t = start; t < end; ++t) {
        auto it = std::lower_bound(timestamps_.begin(), timestamps_.end(), t);
        if (it == timestamps_.end() || *it != t) timestamps_.insert(it, t);
    }
}

void TemporalGraph::add_interaction(NodeId u, NodeId v, Timestamp start, Timestamp end) {
    if (start >= end) throw ParameterError("interval start must precede its end");
    ensure_node(std::max(u, v));
    interactions_[key(u, v)].insert({start, end});
    lifetimes_[u].insert({start, end});
    lifetimes_[v].insert({start, end});
    mark_timestamps(start, end);
}

void TemporalGraph::add_node_presence(NodeId u, Timestamp start, Timestamp end) {
    if (start >= end) throw ParameterError("interval start must precede its end");
    ensure_node(u);
    lifetimes_[u].insert({start, end});
}

const IntervalList* TemporalGraph::intervals(NodeId u, NodeId v) const {
    auto it = interactions_.find(key(u, v));
    return it == interactions_.end() ? nullptr : &it->second;
}

std::shared_ptr<const LabelMap> TemporalGraph::frozen_labels() const { return labels_; }

template <class Pred>
Graph TemporalGraph::collect(Pred alive) const {
    std::vector<Edge> edges;
    for (const auto& [pair, list] : interactions_)
        if (alive(list)) edges.push_back(pair);
    return Graph::from_edges(node_count(), directed_, edges, frozen_labels());
}

Graph TemporalGraph::slice(Timestamp t) const {
    return collect([t](const IntervalList& l) { return l.contains(t); });
}

Graph TemporalGraph::flatten(Timestamp from, Timestamp to) const {
    if (from > to) throw ParameterError("flatten requires t_from <= t_to");
    return collect([from, to](const IntervalList& l) { return l.intersects(from, to); });
}

Graph TemporalGraph::flatten() const {
    return collect([](const IntervalList& l) { return !l.empty(); });
}

SnapshotSequence TemporalGraph::snapshots() const {
    SnapshotSequence seq;
    for (Timestamp t : timestamps_) seq.push_back(t, slice(t));
    return seq;
}

std::string TemporalGraph::label(NodeId id) const {
    if (labels_) return labels_->label(id);
    return std::to_string(id);
}

std::optional<NodeId> TemporalGraph::find_node(std::string_view label) const {
    if (labels_) return labels_->find(label);
    NodeId id = 0;
    auto [ptr, ec] = std::from_chars(label.data(), label.data() + label.size(), id);
    if (ec != std::errc{} || ptr != label.data() + label.size() || id >= node_count()) return std::nullopt;
    return id;
}

std::string TemporalGraph::digest() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&h](std::uint64_t value) {
        for (int i = 0; i < 8; ++i) {
            h ^= (value >> (8 * i)) & 0xFFu;
            h *= 0x100000001b3ULL;
        }
    };
    feed(directed_ ? 1 : 0);
    feed(node_count());
    for (const auto& [pair, list] : interactions_) {
        feed(pair.first);
        feed(pair.second);
        for (const auto& iv : list.intervals()) {
            feed(static_cast<std::uint64_t>(iv.start));
            feed(static_cast<std::uint64_t>(iv.end));
        }
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

Timestamp parse_timestamp(std::string_view token, std::size_t line) {
    Timestamp t = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), t);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw ParseError("invalid integer timestamp '" + std::string(token) + "'", line);
    return t;
}

template <class LineFn>
void for_each_line(std::string_view text, LineFn fn) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        auto line = text.substr(pos, nl - pos);
        pos = nl + 1;
        fn(split_tokens(line), ++line_no);
    }
}

}  // namespace

TemporalGraph load_temporal_edge_list(std::string_view text, bool directed) {
    TemporalGraph g(directed);
    for_each_line(text, [&g](const std::vector<std::string_view>& tokens, std::size_t line) {
        if (tokens.empty() || tokens.front().front() == '#') return;
        if (tokens.size() != 3 && tokens.size() != 4)
            throw ParseError("expected 'u v t' or 'u v t_start t_end'", line);
        const NodeId u = g.add_node(tokens[0]);
        const NodeId v = g.add_node(tokens[1]);
        const Timestamp start = parse_timestamp(tokens[2], line);
        if (tokens.size() == 3) {
            g.add_interaction(u, v, start);
            return;
        }
        const Timestamp end = parse_timestamp(tokens[3], line);
        if (start >= end) throw ParseError("interval start must precede its end", line);
        g.add_interaction(u, v, start, end);
    });
    return g;
}

SnapshotSequence load_snapshots(std::string_view text, bool directed) {
    auto labels = std::make_shared<LabelMap>();
    std::vector<std::pair<Timestamp, std::vector<Edge>>> sections;
    for_each_line(text, [&](const std::vector<std::string_view>& tokens, std::size_t line) {
        if (tokens.empty()) return;
        if (tokens.front().front() == '#') {
            // "# snapshot k" or "#snapshot k"
            std::vector<std::string_view> words = tokens;
            if (words.front() == "#") words.erase(words.begin());
            else words.front().remove_prefix(1);
            if (!words.empty() && words.front() == "snapshot") {
                if (words.size() != 2) throw ParseError("expected '# snapshot <k>'", line);
                const Timestamp id = parse_timestamp(words[1], line);
                if (!sections.empty() && id <= sections.back().first)
                    throw ParseError("snapshot ids must be strictly increasing", line);
                sections.emplace_back(id, std::vector<Edge>{});
            }
            return;
        }
        if (sections.empty()) throw ParseError("edge line before the first '# snapshot' header", line);
        if (tokens.size() < 2) throw ParseError("expected at least two tokens", line);
        sections.back().second.emplace_back(labels->intern(tokens[0]), labels->intern(tokens[1]));
    });
    SnapshotSequence seq;
    std::shared_ptr<const LabelMap> shared = std::move(labels);
    for (auto& [id, edges] : sections) seq.push_back(id, Graph::from_edges(shared->size(), directed, edges, shared));
    return seq;
}

}  // namespace netdiff
