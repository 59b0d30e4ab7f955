#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "netdiff/config.hpp"
#include "netdiff/simulation.hpp"

namespace netdiff {

using json = nlohmann::json;

/// Maps node labels of a network to dense ids and back.
class NodeNames {
public:
    explicit NodeNames(const Network& network) : network_(network) {}

    std::optional<NodeId> find(std::string_view label) const;
    std::string label(NodeId id) const;
    std::size_t size() const { return network_node_count(network_); }
    /// True when the labels differ from the decimal dense ids.
    bool custom() const;

private:
    const Network& network_;
};

/// Parses a configuration document:
///   {"model": {name: value}, "nodes": {name: {label: value}},
///    "edges": {name: [[u, v, value], ...]},
///    "initial": {"fractions": {status: f}} | {"planted": {label: status}},
///    "seed": n, "execution_mode": "snapshots" | "interactions"}
/// Node labels are resolved through `names`. Throws ConfigError naming the field.
ModelConfig config_from_json(const json& doc, const NodeNames& names);
json config_to_json(const ModelConfig& config, const NodeNames& names);

/// Builds a network from {"generator": name, "params": {...}, "seed": n} or
/// {"upload": text, "format": "edgelist"|"temporal"|"snapshots", "directed": bool}.
/// {"path": file, ...} is accepted only when `base_dir` is given.
Network network_from_json(const json& doc, const std::filesystem::path* base_dir = nullptr);
json network_summary(const Network& network);

std::string time_unit_name(const Simulation& sim);

/// Model metadata: name, description, statuses and declared parameters.
json model_info_to_json(const ModelInfo& info);

/// {meta: {model, params, seed, graph_digest, statuses, time_unit[, labels]},
///  iterations: [{iteration, status, node_count, status_delta[, timestamp]}]}
json trajectory_to_json(const Simulation& sim, const Trajectory& trajectory);
json delta_to_json(const IterationDelta& delta);
IterationDelta delta_from_json(const json& doc);
Trajectory trajectory_from_json(const json& doc);

}  // namespace netdiff
