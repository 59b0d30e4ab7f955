#include <doctest.h>

#include "netdiff/error.hpp"
#include "netdiff/models/dynamic.hpp"
#include "test_support.hpp"

using namespace netdiff;
using support::make_graph;

namespace {

using Changes = std::vector<std::pair<NodeId, Status>>;

std::shared_ptr<const SnapshotSequence> repeated(const Graph& g, int count) {
    auto seq = std::make_shared<SnapshotSequence>();
    for (int k = 0; k < count; ++k) seq->push_back(k, g);
    return seq;
}

Trajectory run(const char* model, Network net, const ModelConfig& cfg, std::size_t n, std::uint64_t seed) {
    Simulation sim(get_model(model), std::move(net), cfg);
    sim.set_initial_status(seed);
    return sim.iteration_bunch(n);
}

void strip_timestamps(Trajectory& t) {
    for (auto& d : t) d.timestamp.reset();
}

}  // namespace

TEST_CASE("identical snapshots reproduce the static model") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Graph g = erdos_renyi(80, 0.06, seed);
        const char* pairs[][2] = {{"DynSI", "SI"}, {"DynSIS", "SIS"}, {"DynSIR", "SIR"}};
        for (auto [dyn, stat] : pairs) {
            auto d = run(dyn, repeated(g, 20), support::standard_config(dyn), 21, seed);
            auto s = run(stat, std::make_shared<const Graph>(g), support::standard_config(stat), 21, seed);
            CHECK(d[1].timestamp == 0);
            CHECK(d[20].timestamp == 19);
            CHECK_FALSE(d[0].timestamp.has_value());
            strip_timestamps(d);
            CHECK(d == s);
        }
    }
}

TEST_CASE("edgeless snapshot gives an empty delta") {
    auto seq = std::make_shared<SnapshotSequence>();
    seq->push_back(1, Graph::from_edges(10, false, std::vector<Edge>{}));
    ModelConfig c;
    c.add_model_parameter("beta", 1.0).add_model_parameter(kPercentageInfected, 0.5);
    auto traj = run("DynSI", seq, c, 2, 1);
    CHECK(traj[1].changed.empty());
}

TEST_CASE("a contact present in one snapshot only") {
    // Snapshots 0 and 2 have no u-v contact; snapshot 1 does. v can only be infected at step 2.
    auto seq = std::make_shared<SnapshotSequence>();
    seq->push_back(0, Graph::from_edges(3, false, std::vector<Edge>{{1, 2}}));
    seq->push_back(1, Graph::from_edges(3, false, std::vector<Edge>{{0, 1}}));
    seq->push_back(2, Graph::from_edges(3, false, std::vector<Edge>{{1, 2}}));
    ModelConfig c;
    c.add_model_parameter("beta", 0.5).plant(0, "Infected");
    int infected = 0;
    const int reps = 20000;
    for (int r = 0; r < reps; ++r) {
        auto t = run("DynSI", seq, c, 4, static_cast<std::uint64_t>(r));
        CHECK(t[1].changed.empty());
        if (!t[2].changed.empty()) {
            CHECK(t[2].changed == Changes{{1, 1}});
            ++infected;
        } else {
            CHECK(t[3].changed.empty());
        }
    }
    CHECK(support::within_3_sigma(static_cast<double>(infected) / reps, 0.5, 0.25, reps));
}

TEST_CASE("an interaction alive only at t = 5") {
    auto tg = std::make_shared<TemporalGraph>();
    for (Timestamp t = 1; t <= 8; ++t) tg->add_interaction(2, 3, t);
    tg->add_interaction(0, 1, 5);
    ModelConfig c;
    c.add_model_parameter("beta", 1.0).plant(0, "Infected");
    auto traj = run("DynSI", std::shared_ptr<const TemporalGraph>(tg), c, 9, 1);
    for (std::size_t i = 1; i < traj.size(); ++i) {
        CHECK(traj[i].timestamp == static_cast<Timestamp>(i));
        if (i == 5) CHECK(traj[i].changed == Changes{{1, 1}});
        else CHECK(traj[i].changed.empty());
    }
}

TEST_CASE("recovery fires without contacts") {
    auto tg = std::make_shared<TemporalGraph>();
    tg->ensure_node(5);
    tg->add_interaction(4, 5, 1);
    tg->add_interaction(4, 5, 3);
    tg->add_node_presence(0, 2, 3);
    ModelConfig c;
    c.add_model_parameter("beta", 0.0).add_model_parameter("gamma", 1.0).plant(0, "Infected").plant(1, "Infected");
    auto traj = run("DynSIR", std::shared_ptr<const TemporalGraph>(tg), c, 2, 1);
    CHECK(traj[1].changed == Changes{{0, 2}, {1, 2}});
}

TEST_CASE("constant temporal graph: snapshot and interaction modes agree") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Graph g = erdos_renyi(60, 0.08, seed);
        auto tg = std::make_shared<TemporalGraph>();
        tg->ensure_node(59);
        for (const auto& [u, v] : g.edges()) tg->add_interaction(u, v, 1, 16);
        auto seq = std::make_shared<const SnapshotSequence>(tg->snapshots());
        for (const char* model : {"DynSI", "DynSIS", "DynSIR"}) {
            auto a = run(model, std::shared_ptr<const TemporalGraph>(tg), support::standard_config(model), 16, seed);
            auto b = run(model, seq, support::standard_config(model), 16, seed);
            CHECK(a == b);
        }
    }
}

TEST_CASE("temporal infection never exceeds the flattened one") {
    // One uniform per node per step couples the two runs; the per-step contacts
    // are a subset of the flattened ones, so infected sets stay nested.
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Graph g = erdos_renyi(80, 0.06, seed);
        auto tg = support::random_temporal(g, 30, 0.3, seed);
        auto flat = std::make_shared<const Graph>(tg->flatten());
        ModelConfig c;
        c.add_model_parameter("beta", 0.3);
        for (NodeId v = 0; v < 4; ++v) c.plant(v, "Infected");
        Simulation temporal(get_model("DynSI"), tg, c);
        Simulation flattened(get_model("SI"), flat, c);
        temporal.set_initial_status(seed);
        flattened.set_initial_status(seed);
        temporal.iteration();
        flattened.iteration();
        bool strict = false;
        for (int step = 0; step < 30; ++step) {
            temporal.iteration();
            flattened.iteration();
            for (NodeId v = 0; v < 80; ++v) CHECK(temporal.state().statuses[v] <= flattened.state().statuses[v]);
            strict = strict || temporal.counts()[1] < flattened.counts()[1];
        }
        CHECK(strict);
    }
}

TEST_CASE("running past the end of the topology") {
    auto seq = std::make_shared<SnapshotSequence>();
    seq->push_back(0, Graph::from_edges(4, false, std::vector<Edge>{{0, 1}}));
    seq->push_back(1, Graph::from_edges(4, false, std::vector<Edge>{{1, 2}}));
    Simulation sim(get_model("DynSI"), std::shared_ptr<const SnapshotSequence>(seq), support::standard_config("DynSI"));
    sim.set_initial_status(1);
    CHECK(sim.steps_remaining() == 2);
    sim.iteration_bunch(3);
    CHECK(sim.steps_remaining() == 0);
    CHECK_THROWS_AS(sim.iteration(), SimulationError);

    Parameters p;
    p.set_scalar("beta", 0.5);
    std::vector<Status> before(4, 0), after(4, 0);
    Rng rng(1);
    CHECK_THROWS_AS(dynamic::dyn_step_snapshots(dynamic::Kind::SI, *seq, 2, before, after, p, rng), SimulationError);

    Simulation stat(get_model("SI"), std::make_shared<const Graph>(erdos_renyi(5, 0.5, 1)),
                    support::standard_config("SI"));
    CHECK_FALSE(stat.steps_remaining().has_value());
}

TEST_CASE("absent timestamps carry no contacts") {
    auto tg = std::make_shared<TemporalGraph>();
    tg->add_interaction(0, 1, 2);
    Parameters p;
    p.set_scalar("beta", 1.0);
    std::vector<Status> before{1, 0}, after = before;
    Rng rng(1);
    dynamic::dyn_step_interactions(dynamic::Kind::SI, *tg, 7, before, after, p, rng);
    CHECK(after == before);
    dynamic::dyn_step_interactions(dynamic::Kind::SI, *tg, 2, before, after, p, rng);
    CHECK(after == std::vector<Status>{1, 1});
}
