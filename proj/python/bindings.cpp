#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "netdiff/analytics.hpp"
#include "netdiff/error.hpp"
#include "netdiff/generators.hpp"
#include "netdiff/json_io.hpp"
#include "netdiff/registry.hpp"

namespace py = pybind11;
using namespace netdiff;

namespace {

// Documents cross the boundary as JSON text; the Python side decodes them.
class PySimulation {
public:
    PySimulation(const std::string& model, Network network, const std::string& config)
        : network_(std::move(network)),
          sim_(get_model(model), network_, config_from_json(json::parse(config), NodeNames(network_))) {}

    void set_initial_status(std::optional<std::uint64_t> seed) {
        if (seed) sim_.set_initial_status(*seed);
        else sim_.set_initial_status();
        trajectory_.clear();
    }
    std::string iteration() {
        trajectory_.push_back(sim_.iteration());
        return delta_to_json(trajectory_.back()).dump();
    }
    std::string iteration_bunch(std::size_t n) {
        json out = json::array();
        for (auto& d : sim_.iteration_bunch(n)) {
            out.push_back(delta_to_json(d));
            trajectory_.push_back(std::move(d));
        }
        return out.dump();
    }
    std::string trajectory() const { return trajectory_to_json(sim_, trajectory_).dump(); }
    std::vector<Status> statuses() const { return sim_.state().statuses; }
    std::vector<std::string> status_names() const { return sim_.model().info().statuses; }
    std::uint64_t seed() const { return sim_.seed(); }

private:
    Network network_;
    Simulation sim_;
    Trajectory trajectory_;
};

Network as_network(py::object obj) {
    if (py::isinstance<Graph>(obj)) return std::shared_ptr<const Graph>(obj.cast<std::shared_ptr<Graph>>());
    if (py::isinstance<TemporalGraph>(obj))
        return std::shared_ptr<const TemporalGraph>(obj.cast<std::shared_ptr<TemporalGraph>>());
    if (py::isinstance<SnapshotSequence>(obj))
        return std::shared_ptr<const SnapshotSequence>(obj.cast<std::shared_ptr<SnapshotSequence>>());
    throw py::type_error("expected Graph, TemporalGraph or SnapshotSequence");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Discrete-time diffusion simulation on static and dynamic networks";

    py::register_exception<Error>(m, "Error");
    py::register_exception<ConfigError>(m, "ConfigError", m.attr("Error"));
    py::register_exception<ParseError>(m, "ParseError", m.attr("Error"));
    py::register_exception<ParameterError>(m, "ParameterError", m.attr("Error"));
    py::register_exception<SimulationError>(m, "SimulationError", m.attr("Error"));
    py::register_exception<NotImplementedError>(m, "ModelNotImplementedError", m.attr("Error"));

    py::class_<Graph, std::shared_ptr<Graph>>(m, "Graph")
        .def_property_readonly("directed", &Graph::directed)
        .def_property_readonly("node_count", &Graph::node_count)
        .def_property_readonly("edge_count", &Graph::edge_count)
        .def("neighbors", [](const Graph& g, NodeId u) {
            auto n = g.neighbors(u);
            return std::vector<NodeId>(n.begin(), n.end());
        })
        .def("edges", &Graph::edges)
        .def("label", &Graph::label)
        .def("digest", &Graph::digest)
        .def("to_edge_list", &serialize_edge_list);

    py::class_<TemporalGraph, std::shared_ptr<TemporalGraph>>(m, "TemporalGraph")
        .def(py::init<bool>(), py::arg("directed") = false)
        .def_property_readonly("node_count", &TemporalGraph::node_count)
        .def("add_node", &TemporalGraph::add_node)
        .def("add_interaction", py::overload_cast<NodeId, NodeId, Timestamp>(&TemporalGraph::add_interaction))
        .def("add_interaction", py::overload_cast<NodeId, NodeId, Timestamp, Timestamp>(&TemporalGraph::add_interaction))
        .def("intervals", [](const TemporalGraph& g, NodeId u, NodeId v) {
            std::vector<std::pair<Timestamp, Timestamp>> out;
            if (const auto* list = g.intervals(u, v))
                for (const auto& iv : list->intervals()) out.emplace_back(iv.start, iv.end);
            return out;
        })
        .def("timestamps", &TemporalGraph::timestamps)
        .def("slice", [](const TemporalGraph& g, Timestamp t) { return std::make_shared<Graph>(g.slice(t)); })
        .def("flatten", [](const TemporalGraph& g, Timestamp a, Timestamp b) {
            return std::make_shared<Graph>(g.flatten(a, b));
        })
        .def("snapshots", [](const TemporalGraph& g) { return std::make_shared<SnapshotSequence>(g.snapshots()); })
        .def("digest", &TemporalGraph::digest);

    py::class_<SnapshotSequence, std::shared_ptr<SnapshotSequence>>(m, "SnapshotSequence")
        .def("__len__", &SnapshotSequence::size)
        .def_property_readonly("node_count", &SnapshotSequence::node_count)
        .def("graph", [](const SnapshotSequence& s, std::size_t k) { return std::make_shared<Graph>(s[k].graph); })
        .def("digest", &SnapshotSequence::digest);

    m.def("erdos_renyi", [](std::size_t n, double p, std::uint64_t seed) {
        return std::make_shared<Graph>(erdos_renyi(n, p, seed));
    }, py::arg("n"), py::arg("p"), py::arg("seed") = 0);
    m.def("barabasi_albert", [](std::size_t n, std::size_t k, std::uint64_t seed) {
        return std::make_shared<Graph>(barabasi_albert(n, k, seed));
    }, py::arg("n"), py::arg("m"), py::arg("seed") = 0);
    m.def("watts_strogatz", [](std::size_t n, std::size_t k, double beta, std::uint64_t seed) {
        return std::make_shared<Graph>(watts_strogatz(n, k, beta, seed));
    }, py::arg("n"), py::arg("k"), py::arg("beta"), py::arg("seed") = 0);
    m.def("load_edge_list", [](const std::string& text, bool directed) {
        return std::make_shared<Graph>(load_edge_list(text, directed));
    }, py::arg("text"), py::arg("directed") = false);
    m.def("load_temporal_edge_list", [](const std::string& text, bool directed) {
        return std::make_shared<TemporalGraph>(load_temporal_edge_list(text, directed));
    }, py::arg("text"), py::arg("directed") = false);
    m.def("load_snapshots", [](const std::string& text, bool directed) {
        return std::make_shared<SnapshotSequence>(load_snapshots(text, directed));
    }, py::arg("text"), py::arg("directed") = false);

    m.def("model_names", &model_names);
    m.def("model_info", [](const std::string& name) { return model_info_to_json(get_model(name).info()).dump(); });

    py::class_<PySimulation>(m, "_Simulation")
        .def(py::init([](const std::string& model, py::object network, const std::string& config) {
            return std::make_unique<PySimulation>(model, as_network(network), config);
        }))
        .def("set_initial_status", &PySimulation::set_initial_status, py::arg("seed") = py::none())
        .def("iteration", &PySimulation::iteration)
        .def("iteration_bunch", &PySimulation::iteration_bunch)
        .def("trajectory", &PySimulation::trajectory)
        .def("statuses", &PySimulation::statuses)
        .def("status_names", &PySimulation::status_names)
        .def_property_readonly("seed", &PySimulation::seed);

    m.def("_trend_csv", [](const std::string& trajectory, const std::vector<std::string>& statuses) {
        return to_csv(trend(trajectory_from_json(json::parse(trajectory)), statuses));
    });
}
