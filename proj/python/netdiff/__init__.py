"""Discrete-time diffusion simulation on static and dynamic networks."""

import json

from ._core import (
    ConfigError,
    Error,
    Graph,
    ModelNotImplementedError,
    ParameterError,
    ParseError,
    SimulationError,
    SnapshotSequence,
    TemporalGraph,
    barabasi_albert,
    erdos_renyi,
    load_edge_list,
    load_snapshots,
    load_temporal_edge_list,
    model_names,
    watts_strogatz,
)
from . import _core

__all__ = [
    "ConfigError", "Error", "Graph", "ModelNotImplementedError", "ParameterError", "ParseError",
    "SimulationError", "Simulation", "SnapshotSequence", "TemporalGraph", "barabasi_albert",
    "erdos_renyi", "load_edge_list", "load_snapshots", "load_temporal_edge_list", "model_info",
    "model_names", "trend_csv", "watts_strogatz",
]


def model_info(name):
    return json.loads(_core.model_info(name))


class Simulation:
    """A model attached to a network with a configuration document.

    The configuration uses the same layout as the CLI and REST server:
    {"model": {...}, "nodes": {...}, "edges": {...}, "initial": {...}, "seed": n}.
    """

    def __init__(self, model, network, config=None):
        self._sim = _core._Simulation(model, network, json.dumps(config or {}))

    def set_initial_status(self, seed=None):
        self._sim.set_initial_status(seed)

    def iteration(self):
        return json.loads(self._sim.iteration())

    def iteration_bunch(self, n):
        return json.loads(self._sim.iteration_bunch(n))

    def trajectory(self):
        return json.loads(self._sim.trajectory())

    @property
    def statuses(self):
        return self._sim.statuses()

    @property
    def status_names(self):
        return self._sim.status_names()

    @property
    def seed(self):
        return self._sim.seed


def trend_csv(trajectory, statuses):
    return _core._trend_csv(json.dumps(trajectory), list(statuses))
