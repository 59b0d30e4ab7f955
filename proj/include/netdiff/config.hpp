#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "netdiff/types.hpp"

namespace netdiff {

/// Initial statuses drawn at random: status name -> fraction of |V|.
struct Fractions {
    std::map<std::string, double> by_status;
    bool operator==(const Fractions&) const = default;
};

/// Explicit node -> status assignment; unlisted nodes take the base status.
struct Planted {
    std::map<NodeId, std::string> statuses;
    bool operator==(const Planted&) const = default;
};

using InitialStatus = std::variant<Fractions, Planted>;

struct EdgeValue {
    NodeId u = 0;
    NodeId v = 0;
    double value = 0.0;
    bool operator==(const EdgeValue&) const = default;
};

/// Reserved model parameter: fraction of nodes starting in the model's seed status.
inline constexpr const char* kPercentageInfected = "percentage_infected";

/// Everything needed to start a simulation besides the model and the network.
///
/// Model parameters may also carry the global value of a node or edge
/// parameter; per-node and per-edge entries override it.
struct ModelConfig {
    std::map<std::string, double> model_params;
    std::map<std::string, std::map<NodeId, double>> node_params;
    std::map<std::string, std::vector<EdgeValue>> edge_params;
    InitialStatus initial = Fractions{};
    std::optional<std::uint64_t> seed;
    std::optional<std::string> execution_mode;

    ModelConfig& add_model_parameter(const std::string& name, double value) {
        model_params[name] = value;
        return *this;
    }
    ModelConfig& add_node_parameter(const std::string& name, NodeId node, double value) {
        node_params[name][node] = value;
        return *this;
    }
    ModelConfig& add_edge_parameter(const std::string& name, NodeId u, NodeId v, double value) {
        edge_params[name].push_back({u, v, value});
        return *this;
    }
    ModelConfig& set_fraction(const std::string& status, double fraction);
    ModelConfig& plant(NodeId node, const std::string& status);

    bool operator==(const ModelConfig&) const = default;
};

}  // namespace netdiff
