#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <tuple>

#include "netdiff/error.hpp"
#include "netdiff/temporal.hpp"

using namespace netdiff;

namespace {

std::vector<PresenceInterval> intervals_of(const TemporalGraph& g, NodeId u, NodeId v) {
    const auto* list = g.intervals(u, v);
    if (!list) return {};
    return {list->intervals().begin(), list->intervals().end()};
}

std::set<Edge> edge_set(const Graph& g) {
    auto e = g.edges();
    return {e.begin(), e.end()};
}

// Naive oracle: merge a set of unit timestamps into maximal runs.
std::vector<PresenceInterval> runs_of(std::set<Timestamp> ts) {
    std::vector<PresenceInterval> out;
    for (Timestamp t : ts) {
        if (!out.empty() && out.back().end == t) out.back().end = t + 1;
        else out.push_back({t, t + 1});
    }
    return out;
}

struct Record {
    NodeId u, v;
    Timestamp start, end;
};

// Random instance plus the raw records it was built from.
std::pair<TemporalGraph, std::vector<Record>> random_instance(std::uint64_t seed, std::size_t interactions) {
    std::mt19937_64 rng(seed);
    TemporalGraph g(false);
    std::vector<Record> records;
    for (std::size_t i = 0; i < interactions; ++i) {
        NodeId u = rng() % 12, v = rng() % 12;
        if (u == v) v = (v + 1) % 12;
        Timestamp s = static_cast<Timestamp>(rng() % 20);
        Timestamp e = rng() % 3 == 0 ? s + 1 + static_cast<Timestamp>(rng() % 4) : s + 1;
        g.add_interaction(u, v, s, e);
        records.push_back({std::min(u, v), std::max(u, v), s, e});
    }
    return {std::move(g), std::move(records)};
}

std::set<Edge> brute_slice(const std::vector<Record>& records, Timestamp t) {
    std::set<Edge> out;
    for (const auto& r : records)
        if (r.start <= t && t < r.end) out.insert({r.u, r.v});
    return out;
}

}  // namespace

TEST_CASE("consecutive timestamps merge into maximal intervals") {
    TemporalGraph g;
    for (Timestamp t : {1, 2, 3, 5, 6}) g.add_interaction(0, 1, t);
    CHECK(intervals_of(g, 0, 1) == std::vector<PresenceInterval>{{1, 4}, {5, 7}});
    CHECK(intervals_of(g, 1, 0) == intervals_of(g, 0, 1));
}

TEST_CASE("single timestamp and gaps") {
    TemporalGraph g;
    g.add_interaction(0, 1, 9);
    CHECK(intervals_of(g, 0, 1) == std::vector<PresenceInterval>{{9, 10}});
    TemporalGraph h;
    h.add_interaction(0, 1, 1);
    h.add_interaction(0, 1, 3);
    CHECK(intervals_of(h, 0, 1) == runs_of({1, 3}));
    CHECK(intervals_of(h, 0, 1).size() == 2);
}

TEST_CASE("interval merging matches the per-timestamp oracle in any insertion order") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Timestamp> ts;
        for (int i = 0; i < 15; ++i) ts.push_back(static_cast<Timestamp>(rng() % 30));
        std::set<Timestamp> unique(ts.begin(), ts.end());
        TemporalGraph a, b;
        for (Timestamp t : ts) a.add_interaction(2, 3, t);
        std::shuffle(ts.begin(), ts.end(), rng);
        for (Timestamp t : ts) b.add_interaction(3, 2, t);
        for (Timestamp t : ts) b.add_interaction(3, 2, t);  // idempotent
        CHECK(intervals_of(a, 2, 3) == runs_of(unique));
        CHECK(intervals_of(b, 2, 3) == intervals_of(a, 2, 3));
    }
}

TEST_CASE("overlapping explicit intervals merge") {
    IntervalList l;
    l.insert({5, 8});
    l.insert({1, 3});
    l.insert({3, 5});
    CHECK(std::vector<PresenceInterval>(l.intervals().begin(), l.intervals().end()) ==
          std::vector<PresenceInterval>{{1, 8}});
    l.insert({10, 12});
    l.insert({0, 11});
    CHECK(l.intervals().size() == 1);
    CHECK(l.intervals()[0] == PresenceInterval{0, 12});
    CHECK_THROWS_AS(TemporalGraph().add_interaction(0, 1, 4, 4), ParameterError);
}

TEST_CASE("slices are half-open") {
    TemporalGraph g;
    g.add_interaction(0, 1, 1, 4);
    CHECK(g.slice(3).has_edge(0, 1));
    CHECK_FALSE(g.slice(4).has_edge(0, 1));
    CHECK_FALSE(g.slice(0).has_edge(0, 1));
    CHECK(g.slice(100).edge_count() == 0);
    TemporalGraph empty;
    CHECK(empty.slice(0).edge_count() == 0);
    CHECK(empty.flatten().edge_count() == 0);
    CHECK(empty.timestamps().empty());
}

TEST_CASE("slice and flatten agree with brute force on random instances") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto [g, records] = random_instance(seed, 50);
        std::set<Edge> all;
        for (Timestamp t : g.timestamps()) {
            auto s = edge_set(g.slice(t));
            CHECK(s == brute_slice(records, t));
            all.insert(s.begin(), s.end());
        }
        CHECK(edge_set(g.flatten()) == all);
        const auto& T = g.timestamps();
        CHECK(edge_set(g.flatten(T.front(), T.back() + 1)) == all);
        for (Timestamp from = 0; from < 22; from += 3) {
            for (Timestamp to = from; to < 26; to += 4) {
                std::set<Edge> union_of_slices;
                for (Timestamp t = from; t < to; ++t) {
                    auto s = brute_slice(records, t);
                    union_of_slices.insert(s.begin(), s.end());
                    auto sl = edge_set(g.slice(t));
                    auto fl = edge_set(g.flatten(from, to));
                    CHECK(std::includes(fl.begin(), fl.end(), sl.begin(), sl.end()));
                }
                CHECK(edge_set(g.flatten(from, to)) == union_of_slices);
            }
        }
        CHECK(g.flatten(5, 5).edge_count() == 0);
        CHECK_THROWS_AS(g.flatten(6, 5), ParameterError);
    }
}

TEST_CASE("nodes in a slice are alive at that time") {
    auto [g, records] = random_instance(42, 60);
    for (Timestamp t : g.timestamps()) {
        Graph s = g.slice(t);
        for (NodeId u = 0; u < s.node_count(); ++u)
            if (s.degree(u) > 0) CHECK(g.lifetime(u).contains(t));
    }
}

TEST_CASE("snapshots follow the timestamp domain") {
    TemporalGraph g;
    g.add_interaction(0, 1, 1);
    g.add_interaction(1, 2, 2);
    g.add_interaction(0, 2, 1, 3);
    auto seq = g.snapshots();
    REQUIRE(seq.size() == 2);
    CHECK(seq[0].id == 1);
    CHECK(seq[1].id == 2);
    for (std::size_t k = 0; k < seq.size(); ++k) {
        CHECK(edge_set(seq[k].graph) == edge_set(g.slice(seq[k].id)));
        CHECK(seq[k].graph.has_edge(0, 2));
    }
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto [r, records] = random_instance(seed + 100, 40);
        auto snaps = r.snapshots();
        CHECK(snaps.size() == r.timestamps().size());
        for (std::size_t k = 0; k < snaps.size(); ++k)
            CHECK(edge_set(snaps[k].graph) == brute_slice(records, r.timestamps()[k]));
    }
}

TEST_CASE("directed temporal graphs keep ordered pairs") {
    TemporalGraph g(true);
    g.add_interaction(0, 1, 1);
    g.add_interaction(1, 0, 2);
    CHECK(intervals_of(g, 0, 1) == std::vector<PresenceInterval>{{1, 2}});
    CHECK(intervals_of(g, 1, 0) == std::vector<PresenceInterval>{{2, 3}});
    CHECK(g.slice(1).has_edge(0, 1));
    CHECK_FALSE(g.slice(1).has_edge(1, 0));
}

TEST_CASE("temporal edge list accepts instants and intervals") {
    auto g = load_temporal_edge_list("# comment\na b 1\na b 2\nb c 4 7\n", false);
    CHECK(g.node_count() == 3);
    CHECK(intervals_of(g, 0, 1) == std::vector<PresenceInterval>{{1, 3}});
    CHECK(intervals_of(g, 1, 2) == std::vector<PresenceInterval>{{4, 7}});
    CHECK(g.timestamps() == std::vector<Timestamp>{1, 2, 4, 5, 6});
    CHECK(g.label(2) == "c");
    CHECK(g.find_node("b") == NodeId{1});
    CHECK_THROWS_AS(load_temporal_edge_list("a b\n", false), ParseError);
    CHECK_THROWS_AS(load_temporal_edge_list("a b x\n", false), ParseError);
    CHECK_THROWS_AS(load_temporal_edge_list("a b 5 5\n", false), ParseError);
}

TEST_CASE("snapshot files share one label space") {
    auto seq = load_snapshots("# snapshot 1\na b\n# snapshot 3\nb c\nc a\n", false);
    REQUIRE(seq.size() == 2);
    CHECK(seq.node_count() == 3);
    CHECK(seq[0].graph.has_edge(0, 1));
    CHECK(seq[1].graph.edge_count() == 2);
    CHECK(seq[1].graph.label(2) == "c");
    CHECK_THROWS_AS(load_snapshots("a b\n", false), ParseError);
    CHECK_THROWS_AS(load_snapshots("# snapshot 2\na b\n# snapshot 1\n", false), ParseError);
}

TEST_CASE("snapshot sequences require increasing ids") {
    SnapshotSequence seq;
    seq.push_back(1, Graph::from_edges(3, false, std::vector<Edge>{{0, 1}}));
    CHECK_THROWS_AS(seq.push_back(1, Graph::from_edges(3, false, std::vector<Edge>{})), ParameterError);
    CHECK_THROWS_AS(seq.push_back(2, Graph::from_edges(4, false, std::vector<Edge>{})), ParameterError);
    seq.push_back(5, Graph::from_edges(3, false, std::vector<Edge>{{1, 2}}));
    CHECK(seq.size() == 2);
}
