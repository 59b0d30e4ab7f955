#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <regex>

#include "netdiff/analytics.hpp"
#include "netdiff/error.hpp"
#include "test_support.hpp"

using namespace netdiff;

namespace {

const std::vector<std::string> kSIR{"Susceptible", "Infected", "Removed"};

Trajectory sir_run(std::uint64_t seed, std::size_t n = 60) {
    auto g = std::make_shared<const Graph>(erdos_renyi(200, 0.05, 1));
    ModelConfig c;
    c.add_model_parameter("beta", 0.1).add_model_parameter("gamma", 0.1).add_model_parameter(kPercentageInfected,
                                                                                             0.05);
    Simulation sim(get_model("SIR"), g, c);
    sim.set_initial_status(seed);
    return sim.iteration_bunch(n);
}

IterationDelta synthetic(std::uint64_t iteration, std::vector<std::uint64_t> counts) {
    IterationDelta d;
    d.iteration = iteration;
    d.node_count = std::move(counts);
    d.status_delta.assign(d.node_count.size(), 0);
    return d;
}

}  // namespace

TEST_CASE("trend on a fixpoint is constant") {
    Trajectory t{synthetic(0, {7, 3})};
    for (std::uint64_t i = 1; i < 10; ++i) t.push_back(synthetic(i, {7, 3}));
    auto s = trend(t, {"Susceptible", "Infected"});
    CHECK(s.kind == "trend");
    CHECK(s.iterations.size() == 10);
    for (double v : s.values[0]) CHECK(v == 7);
    for (double v : s.values[1]) CHECK(v == 3);
    auto p = prevalence(t, {"Susceptible", "Infected"});
    CHECK(p.iterations.size() == 9);
    for (const auto& col : p.values)
        for (double v : col) CHECK(v == 0);
}

TEST_CASE("trend matches replayed counts and SIR removals never decrease") {
    auto traj = sir_run(3);
    auto s = trend(traj, kSIR, "SIR");
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const auto state = replay(std::span(traj).first(i + 1), 200);
        for (Status k = 0; k < 3; ++k)
            CHECK(s.values[k][i] == static_cast<double>(std::count(state.begin(), state.end(), k)));
        if (i > 0) CHECK(s.values[2][i] >= s.values[2][i - 1]);
    }
}

TEST_CASE("prevalence is the first difference of the trend") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto traj = sir_run(seed);
        auto t = trend(traj, kSIR);
        auto p = prevalence(traj, kSIR);
        REQUIRE(p.iterations.size() == t.iterations.size() - 1);
        for (std::size_t k = 0; k < 3; ++k)
            for (std::size_t i = 1; i < t.iterations.size(); ++i)
                CHECK(p.values[k][i - 1] == t.values[k][i] - t.values[k][i - 1]);
    }
}

TEST_CASE("compare") {
    auto a = trend(sir_run(1, 20), kSIR, "a");
    auto b = trend(sir_run(2, 30), kSIR, "b");
    std::vector<Series> one{a};
    auto table = compare(one);
    REQUIRE(table.columns.size() == 3);
    CHECK(table.iterations == a.iterations);
    for (std::size_t k = 0; k < 3; ++k) CHECK(table.columns[k].values == a.values[k]);

    std::vector<Series> both{a, b};
    const std::vector<std::string> filter{"Infected"};
    auto infected = compare(both, filter);
    REQUIRE(infected.columns.size() == 2);
    CHECK(infected.columns[0].series == "a");
    CHECK(infected.columns[1].status == "Infected");
    CHECK(infected.iterations.size() == 30);
    CHECK(std::isnan(infected.columns[0].values[25]));
    CHECK(to_csv(infected).substr(0, 32) == "iteration,a.Infected,b.Infected\n");
}

TEST_CASE("SI saturates while SIR peaks and decays") {
    auto g = std::make_shared<const Graph>(erdos_renyi(300, 0.05, 4));
    ModelConfig si;
    si.add_model_parameter("beta", 0.05).add_model_parameter(kPercentageInfected, 0.02);
    ModelConfig sir = si;
    sir.add_model_parameter("gamma", 0.1);
    Simulation a(get_model("SI"), g, si);
    Simulation b(get_model("SIR"), g, sir);
    a.set_initial_status(5);
    b.set_initial_status(5);
    const std::vector<Series> series{trend(a.iteration_bunch(200), {"Susceptible", "Infected"}, "SI"),
                                     trend(b.iteration_bunch(200), kSIR, "SIR")};
    const std::vector<std::string> filter{"Infected"};
    auto table = compare(series, filter);
    const auto& si_inf = table.columns[0].values;
    const auto& sir_inf = table.columns[1].values;
    CHECK(std::is_sorted(si_inf.begin(), si_inf.end()));
    CHECK(si_inf.back() == 300);
    const auto peak = std::max_element(sir_inf.begin(), sir_inf.end());
    CHECK(*peak > sir_inf.front());
    CHECK(sir_inf.back() < *peak / 10);
    // Unimodal up to small stochastic dips: the running maximum before the peak
    // and the running minimum after it stay within a few nodes of the curve.
    double high = 0;
    for (auto it = sir_inf.begin(); it != peak; ++it) {
        high = std::max(high, *it);
        CHECK(*it >= high - 5);
    }
    double low = *peak;
    for (auto it = peak; it != sir_inf.end(); ++it) {
        low = std::min(low, *it);
        CHECK(*it <= low + 5);
    }
}

TEST_CASE("aggregate_runs") {
    auto single = std::vector<Trajectory>{sir_run(1)};
    auto b = aggregate_runs(single, kSIR, 5, 95);
    CHECK(b.median == b.lower);
    CHECK(b.median == b.upper);

    std::vector<Trajectory> same(5, sir_run(2));
    auto z = aggregate_runs(same, kSIR, 10, 90);
    CHECK(z.lower == z.upper);
    CHECK(z.median == trend(same[0], kSIR).values);

    // Per point, run r holds a known value; compare against a direct sort.
    Rng rng(7);
    std::vector<Trajectory> runs(100);
    for (auto& r : runs)
        for (std::uint64_t i = 0; i < 12; ++i) r.push_back(synthetic(i, {rng.below(1000), rng.below(50) * i}));
    auto band = aggregate_runs(runs, {"A", "B"}, 10, 90);
    for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t i = 0; i < 12; ++i) {
            std::vector<double> sample;
            for (const auto& r : runs) sample.push_back(static_cast<double>(r[i].node_count[k]));
            std::sort(sample.begin(), sample.end());
            CHECK(band.median[k][i] == sample[49]);
            CHECK(band.lower[k][i] == sample[9]);
            CHECK(band.upper[k][i] == sample[89]);
        }

    // Permuting runs does not change the band.
    std::reverse(runs.begin(), runs.end());
    auto again = aggregate_runs(runs, {"A", "B"}, 10, 90);
    CHECK(again.median == band.median);
    CHECK(again.lower == band.lower);

    // Shorter runs hold their last value.
    std::vector<Trajectory> ragged{{synthetic(0, {1}), synthetic(1, {2})}, {synthetic(0, {5})}, {synthetic(0, {9})}};
    auto r = aggregate_runs(ragged, {"A"}, 0, 100);
    CHECK(r.iterations == std::vector<std::uint64_t>{0, 1});
    CHECK(r.lower[0] == std::vector<double>{1, 2});
    CHECK(r.median[0] == std::vector<double>{5, 5});
    CHECK(r.upper[0] == std::vector<double>{9, 9});

    CHECK_THROWS_AS(aggregate_runs(single, kSIR, 60, 90), ParameterError);
    CHECK_THROWS_AS(aggregate_runs(single, kSIR, 10, 40), ParameterError);
    CHECK_THROWS_AS(aggregate_runs(single, kSIR, 50, 50), ParameterError);
    CHECK_THROWS_AS(aggregate_runs(std::vector<Trajectory>{}, kSIR, 10, 90), ParameterError);
    CHECK_THROWS_AS(aggregate_runs(single, {"A", "B"}, 10, 90), ParameterError);
}

TEST_CASE("nearest rank") {
    const std::vector<double> v{15, 20, 35, 40, 50};
    CHECK(nearest_rank(v, 5) == 15);
    CHECK(nearest_rank(v, 30) == 20);
    CHECK(nearest_rank(v, 40) == 20);
    CHECK(nearest_rank(v, 50) == 35);
    CHECK(nearest_rank(v, 100) == 50);
    CHECK(nearest_rank(v, 0) == 15);
}

TEST_CASE("export formats") {
    Series empty{"m", "trend", {"S", "I"}, {}, {{}, {}}};
    CHECK(to_csv(empty) == "iteration,S,I\n");

    auto s = trend(sir_run(4, 15), kSIR, "SIR");
    CHECK(series_from_json(nlohmann::json::parse(to_json(s).dump())) == s);
    auto csv = to_csv(s);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 16);
    CHECK(csv.rfind("iteration,Susceptible,Infected,Removed\n0,190,10,0\n", 0) == 0);

    auto svg = to_svg(s);
    const std::regex polyline("<polyline[^>]*data-status=\"([A-Za-z]+)\"[^>]*points=\"([^\"]*)\"");
    std::vector<std::string> found;
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), polyline); it != std::sregex_iterator(); ++it) {
        found.push_back((*it)[1]);
        const std::string pts = (*it)[2];
        CHECK(std::count(pts.begin(), pts.end(), ',') == 15);
    }
    CHECK(found == kSIR);
    CHECK(svg.find("</svg>") != std::string::npos);

    std::vector<Trajectory> runs{sir_run(1, 10), sir_run(2, 10), sir_run(3, 10)};
    auto band = aggregate_runs(runs, kSIR, 25, 75, "SIR");
    auto bsvg = to_svg(band);
    CHECK(std::distance(std::sregex_iterator(bsvg.begin(), bsvg.end(), polyline), std::sregex_iterator()) == 3);
    auto bcsv = to_csv(band);
    CHECK(bcsv.rfind("iteration,Susceptible_median,Susceptible_lower,Susceptible_upper,Infected_median", 0) == 0);
    auto j = to_json(band);
    CHECK(j["bands"]["Infected"]["median"].size() == 10);
    CHECK(j["centre"] == "median");
}
