import pytest

import netdiff


def sir_listing():
    return {"model": {"beta": 0.001, "gamma": 0.01, "percentage_infected": 0.05}}


def test_listing_runs_two_hundred_iterations():
    g = netdiff.erdos_renyi(1000, 0.1, 1)
    sim = netdiff.Simulation("SIR", g, sir_listing())
    sim.set_initial_status(3)
    traj = sim.iteration_bunch(200)
    assert len(traj) == 200
    assert len(traj[0]["status"]) == 1000
    assert traj[0]["node_count"]["1"] == 50
    assert [d["iteration"] for d in traj] == list(range(200))
    for d in traj:
        assert sum(d["node_count"].values()) == 1000


def test_same_seed_same_trajectory():
    g = netdiff.barabasi_albert(300, 2, 5)

    def run(seed):
        sim = netdiff.Simulation("SIS", g, {"model": {"beta": 0.05, "lambda": 0.05, "percentage_infected": 0.05}})
        sim.set_initial_status(seed)
        sim.iteration_bunch(40)
        return sim.trajectory()

    assert run(9) == run(9)
    assert run(9)["iterations"] != run(10)["iterations"]
    assert run(9)["meta"]["seed"] == 9


def test_statuses_follow_replay():
    g = netdiff.watts_strogatz(100, 4, 0.1, 2)
    sim = netdiff.Simulation("SI", g, {"model": {"beta": 0.2}, "initial": {"planted": {"0": "Infected"}}})
    sim.set_initial_status(1)
    state = [0] * 100
    for d in sim.iteration_bunch(15):
        for node, status in d["status"].items():
            state[int(node)] = status
    assert state == sim.statuses
    assert sim.status_names == ["Susceptible", "Infected"]


def test_errors_map_to_python_exceptions():
    g = netdiff.erdos_renyi(20, 0.2, 1)
    with pytest.raises(netdiff.ConfigError, match="model.betta"):
        netdiff.Simulation("SIR", g, {"model": {"betta": 0.1, "gamma": 0.1}})
    with pytest.raises(netdiff.ConfigError):
        netdiff.Simulation("NoSuchModel", g, {})
    with pytest.raises(netdiff.ModelNotImplementedError, match="Vilone"):
        netdiff.Simulation("CognitiveOpinionDynamics", g, {})
    with pytest.raises(netdiff.ParseError):
        netdiff.load_temporal_edge_list("0 1 x\n", False)
    with pytest.raises(netdiff.ParameterError):
        netdiff.erdos_renyi(10, 1.5, 1)
    sim = netdiff.Simulation("SI", g, {"model": {"beta": 0.1}})
    with pytest.raises(netdiff.SimulationError):
        sim.iteration()
    assert issubclass(netdiff.ConfigError, netdiff.Error)


def test_temporal_networks():
    tg = netdiff.load_temporal_edge_list("a b 1\nb c 2 4\n", False)
    assert tg.timestamps() == [1, 2, 3]
    assert tg.slice(3).edge_count == 1
    assert len(tg.snapshots()) == 3
    sim = netdiff.Simulation("DynSI", tg, {"model": {"beta": 1.0}, "initial": {"planted": {"a": "Infected"}}})
    sim.set_initial_status(1)
    traj = sim.iteration_bunch(4)
    assert traj[1]["timestamp"] == 1
    assert traj[1]["status"] == {"1": 1}
    assert traj[2]["status"] == {"2": 1}
    with pytest.raises(netdiff.SimulationError):
        sim.iteration()


def test_metadata_and_trend():
    assert "SIR" in netdiff.model_names()
    info = netdiff.model_info("SWIR")
    assert info["statuses"] == ["Susceptible", "Weakened", "Infected", "Recovered"]
    g = netdiff.erdos_renyi(50, 0.1, 1)
    sim = netdiff.Simulation("SIR", g, {"model": {"beta": 0.1, "gamma": 0.1, "percentage_infected": 0.1}})
    sim.set_initial_status(1)
    sim.iteration_bunch(5)
    csv = netdiff.trend_csv(sim.trajectory(), ["Susceptible", "Infected", "Removed"])
    lines = csv.strip().split("\n")
    assert lines[0] == "iteration,Susceptible,Infected,Removed"
    assert lines[1] == "0,45,5,0"
    assert len(lines) == 6
