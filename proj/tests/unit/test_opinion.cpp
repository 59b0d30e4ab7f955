#include <doctest.h>

#include <algorithm>
#include <set>

#include "netdiff/error.hpp"
#include "netdiff/json_io.hpp"
#include "netdiff/models/opinion.hpp"
#include "test_support.hpp"

using namespace netdiff;
using namespace netdiff::opinion;
using support::make_graph;

namespace {

std::size_t plus_count(std::span<const Status> s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), kPlus)); }

Trajectory run(const char* model, const std::shared_ptr<const Graph>& g, const ModelConfig& cfg, std::size_t n,
               std::uint64_t seed) {
    Simulation sim(get_model(model), g, cfg);
    sim.set_initial_status(seed);
    return sim.iteration_bunch(n);
}

}  // namespace

TEST_CASE("consensus is absorbing") {
    auto g = std::make_shared<const Graph>(erdos_renyi(40, 0.2, 1));
    for (const char* model : {"Voter", "Sznajd", "QVoter", "MajorityRule"}) {
        for (double plus : {0.0, 1.0}) {
            ModelConfig c = support::standard_config(model);
            c.initial = Fractions{};
            if (plus == 1.0) c.set_fraction("Plus", 1.0);
            auto traj = run(model, g, c, 200, 3);
            for (std::size_t i = 1; i < traj.size(); ++i) CHECK_MESSAGE(traj[i].changed.empty(), model);
        }
    }
}

TEST_CASE("voter copies a neighbor") {
    // 1 -> 0 and 2 -> 0: only node 0 has in-neighbors, and they are both Plus.
    auto g = make_graph(3, {{1, 0}, {2, 0}}, true);
    int flips = 0;
    const int reps = 30000;
    for (int r = 0; r < reps; ++r) {
        std::vector<Status> s{kMinus, kPlus, kPlus};
        Rng rng(static_cast<std::uint64_t>(r));
        Rng peek = rng;
        const bool selected = peek.below(3) == 0;
        voter_update(*g, s, rng);
        CHECK(s[1] == kPlus);
        CHECK(s[2] == kPlus);
        CHECK((s[0] == kPlus) == selected);
        flips += s[0] == kPlus;
    }
    CHECK(support::within_3_sigma(static_cast<double>(flips) / reps, 1.0 / 3, 2.0 / 9, reps));

    auto isolated = make_graph(2, {});
    std::vector<Status> s{kMinus, kPlus};
    Rng rng(1);
    for (int i = 0; i < 100; ++i) voter_update(*isolated, s, rng);
    CHECK(s == std::vector<Status>{kMinus, kPlus});
}

TEST_CASE("sznajd") {
    auto edge = make_graph(2, {{0, 1}});
    auto g = std::make_shared<const Graph>(erdos_renyi(30, 0.3, 2));
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        std::vector<Status> s{kMinus, kPlus};
        Rng rng(seed);
        sznajd_update(*edge, s, rng);
        CHECK(s == std::vector<Status>{kMinus, kPlus});
    }

    // Star: center and leaf 1 agree on Plus; any update either does nothing or converts the whole star.
    auto star = support::star(5);
    int converted = 0;
    for (std::uint64_t seed = 0; seed < 2000; ++seed) {
        std::vector<Status> s{kPlus, kPlus, kMinus, kMinus, kMinus, kMinus};
        const auto before = s;
        Rng rng(seed);
        sznajd_update(*star, s, rng);
        if (s != before) {
            CHECK(plus_count(s) == 6);
            ++converted;
        }
    }
    // Two of the ten arcs join the agreeing pair.
    CHECK(support::within_3_sigma(converted / 2000.0, 0.2, 0.16, 2000));
}

TEST_CASE("sznajd consensus on a complete graph") {
    // On K_n with k Plus nodes an update acts only when it picks an agreeing pair,
    // and then the whole graph converts, so P(Plus) = k(k-1) / (k(k-1) + (n-k)(n-k-1)).
    // For n = 20, k = 14 this is 182 / 212 = 91 / 106.
    const double exact = 91.0 / 106.0;
    auto k20 = support::complete(20);
    ModelConfig c;
    c.set_fraction("Plus", 0.7);
    const int runs = 500;
    int plus = 0;
    Simulation sim(get_model("Sznajd"), k20, c);
    for (int r = 0; r < runs; ++r) {
        sim.set_initial_status(static_cast<std::uint64_t>(r));
        sim.iteration();
        while (sim.counts()[0] != 0 && sim.counts()[1] != 0) sim.iteration();
        plus += sim.counts()[1] == 20;
    }
    const double observed = static_cast<double>(plus) / runs;
    CHECK(support::within_3_sigma(observed, exact, exact * (1 - exact), runs));
    CHECK(observed > 0.7);
}

TEST_CASE("qvoter with q = 1 is the voter model") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto g = std::make_shared<const Graph>(erdos_renyi(50, 0.1, seed));
        ModelConfig q;
        q.add_model_parameter("q", 1).set_fraction("Plus", 0.5);
        ModelConfig v;
        v.set_fraction("Plus", 0.5);
        CHECK(run("QVoter", g, q, 500, seed) == run("Voter", g, v, 500, seed));
    }
}

TEST_CASE("qvoter panels") {
    auto g = make_graph(3, {{1, 0}, {2, 0}}, true);
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        std::vector<Status> s{kMinus, kPlus, kMinus};
        Rng rng(seed);
        qvoter_update(*g, s, 2, rng);
        CHECK(s == std::vector<Status>{kMinus, kPlus, kMinus});
    }

    // Every undirected graph and opinion vector on 4 nodes, q larger than any degree:
    // the selected node flips iff all its neighbors agree against it.
    const std::vector<Edge> slots{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    for (unsigned mask = 0; mask < 64; ++mask) {
        std::vector<Edge> edges;
        for (unsigned b = 0; b < 6; ++b)
            if (mask & (1u << b)) edges.push_back(slots[b]);
        auto graph = make_graph(4, edges);
        for (unsigned ops = 0; ops < 16; ++ops) {
            for (std::uint64_t seed = 0; seed < 8; ++seed) {
                std::vector<Status> s(4);
                for (unsigned v = 0; v < 4; ++v) s[v] = (ops >> v) & 1u;
                auto expected = s;
                Rng rng(seed * 131 + mask);
                Rng peek = rng;
                const auto u = static_cast<NodeId>(peek.below(4));
                const auto n = graph->neighbors(u);
                if (!n.empty() && std::all_of(n.begin(), n.end(), [&](NodeId w) { return s[w] == s[n.front()]; }))
                    expected[u] = s[n.front()];
                qvoter_update(*graph, s, 5, rng);
                CHECK(s == expected);
            }
        }
    }
}

TEST_CASE("majority rule") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        std::vector<Status> s(10, kMinus);
        Rng rng(seed);
        majority_update(s, 4, rng);
        CHECK(plus_count(s) == 0);
    }
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        std::vector<Status> s{kPlus, kPlus, kMinus, kMinus};
        Rng rng(seed);
        majority_update(s, 4, rng);
        CHECK(plus_count(s) == 4);
    }
    std::vector<Status> s(3, kPlus);
    Rng rng(1);
    CHECK_THROWS_AS(majority_update(s, 4, rng), ParameterError);
    CHECK_THROWS_AS(majority_update(s, 0, rng), ParameterError);

    // K10 with seven Plus, r = 3: expected gain over all C(10,3) groups.
    double exact = 0.0;
    int groups = 0;
    for (int a = 0; a < 10; ++a)
        for (int b = a + 1; b < 10; ++b)
            for (int c = b + 1; c < 10; ++c) {
                const int plus = (a < 7) + (b < 7) + (c < 7);
                exact += (plus >= 2 ? 3 : 0) - plus;
                ++groups;
            }
    exact /= groups;
    double second = 0.0;
    for (int a = 0; a < 10; ++a)
        for (int b = a + 1; b < 10; ++b)
            for (int c = b + 1; c < 10; ++c) {
                const int plus = (a < 7) + (b < 7) + (c < 7);
                const double gain = (plus >= 2 ? 3 : 0) - plus;
                second += gain * gain / groups;
            }
    const int reps = 100000;
    double total = 0.0;
    for (int r = 0; r < reps; ++r) {
        std::vector<Status> st(10, kMinus);
        std::fill(st.begin(), st.begin() + 7, kPlus);
        Rng gen(static_cast<std::uint64_t>(r));
        majority_update(st, 3, gen);
        total += static_cast<double>(plus_count(st)) - 7.0;
    }
    CHECK(support::within_3_sigma(total / reps, exact, second - exact * exact, reps));
}

TEST_CASE("floyd sampling") {
    Rng rng(5);
    std::map<std::set<std::size_t>, double> seen;
    const int reps = 50000;
    for (int r = 0; r < reps; ++r) {
        auto picked = sample_distinct(5, 2, rng);
        std::set<std::size_t> set(picked.begin(), picked.end());
        REQUIRE(set.size() == 2);
        for (auto x : set) CHECK(x < 5);
        seen[set] += 1;
    }
    REQUIRE(seen.size() == 10);
    std::vector<double> observed;
    for (const auto& [set, count] : seen) observed.push_back(count);
    CHECK(support::chi_square_p(observed, std::vector<double>(10, 0.1)) > 0.001);
    auto all = sample_distinct(7, 7, rng);
    std::sort(all.begin(), all.end());
    CHECK(all == std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6});
}

TEST_CASE("bounded change per micro-update") {
    auto g = std::make_shared<const Graph>(erdos_renyi(60, 0.1, 4));
    const std::size_t max_deg = g->max_in_degree();
    for (const char* model : {"Voter", "QVoter", "MajorityRule", "Sznajd"}) {
        auto traj = run(model, g, support::standard_config(model), 400, 6);
        const std::size_t bound = std::string(model) == "MajorityRule" ? 5 : std::string(model) == "Sznajd" ? max_deg * 2 : 1;
        for (std::size_t i = 1; i < traj.size(); ++i)
            CHECK(static_cast<std::size_t>(std::abs(traj[i].status_delta[kPlus])) <= bound);
    }
}

TEST_CASE("sweep mode batches |V| micro-updates") {
    auto g = std::make_shared<const Graph>(erdos_renyi(40, 0.15, 7));
    for (const char* model : {"Voter", "Sznajd", "QVoter", "MajorityRule"}) {
        ModelConfig micro = support::standard_config(model);
        ModelConfig sweep = micro;
        sweep.add_model_parameter("sweep", 1);
        Simulation a(get_model(model), g, micro);
        Simulation b(get_model(model), g, sweep);
        a.set_initial_status(9);
        b.set_initial_status(9);
        a.iteration_bunch(1 + 40 * 3);
        b.iteration_bunch(1 + 3);
        CHECK(a.state().statuses == b.state().statuses);
        CHECK(trajectory_to_json(b, {})["meta"]["time_unit"] == "sweep");
        CHECK(trajectory_to_json(a, {})["meta"]["time_unit"] == "micro_update");
    }
}

TEST_CASE("opinion configuration") {
    auto g = std::make_shared<const Graph>(erdos_renyi(10, 0.3, 1));
    ModelConfig eps;
    eps.add_model_parameter("q", 2).add_model_parameter("epsilon", 0.1);
    CHECK_THROWS_AS(Simulation(get_model("QVoter"), g, eps), ConfigError);
    ModelConfig r;
    r.add_model_parameter("r", 11);
    try {
        Simulation sim(get_model("MajorityRule"), g, r);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.field() == "model.r");
    }
    ModelConfig q0;
    q0.add_model_parameter("q", 0);
    CHECK_THROWS_AS(Simulation(get_model("QVoter"), g, q0), ConfigError);
    ModelConfig half;
    half.add_model_parameter("q", 1.5);
    CHECK_THROWS_AS(Simulation(get_model("QVoter"), g, half), ConfigError);
}

TEST_CASE("cognitive opinion dynamics") {
    CognitiveState agent(0.3, -1, 0.5, 0.8);
    CHECK(agent.peer_trust() == doctest::Approx(0.2));
    CHECK(agent.risk_sensitivity() == -1);
    CHECK_THROWS_AS(CognitiveState(1.2, 0, 0.5, 0.5), ParameterError);
    CHECK_THROWS_AS(CognitiveState(0.5, 2, 0.5, 0.5), ParameterError);
    CHECK_THROWS_AS(CognitiveState(0.5, 0, -0.1, 0.5), ParameterError);
    CHECK_THROWS_AS(CognitiveState(0.5, 0, 0.5, 1.1), ParameterError);

    auto g = std::make_shared<const Graph>(erdos_renyi(10, 0.3, 1));
    try {
        Simulation sim(get_model("CognitiveOpinionDynamics"), g, ModelConfig{});
        FAIL("expected NotImplementedError");
    } catch (const NotImplementedError& e) {
        CHECK(std::string(e.what()).find("Vilone et al. (2016)") != std::string::npos);
    }
}
