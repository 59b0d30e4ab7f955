#include "netdiff/model.hpp"

#include <algorithm>
#include <cmath>

#include "netdiff/error.hpp"

namespace netdiff {

ModelConfig& ModelConfig::set_fraction(const std::string& status, double fraction) {
    if (!std::holds_alternative<Fractions>(initial)) initial = Fractions{};
    std::get<Fractions>(initial).by_status[status] = fraction;
    return *this;
}

ModelConfig& ModelConfig::plant(NodeId node, const std::string& status) {
    if (!std::holds_alternative<Planted>(initial)) initial = Planted{};
    std::get<Planted>(initial).statuses[node] = status;
    return *this;
}

std::optional<Status> ModelInfo::status_code(std::string_view status) const {
    for (std::size_t i = 0; i < statuses.size(); ++i)
        if (statuses[i] == status) return static_cast<Status>(i);
    return std::nullopt;
}

namespace {

template <class Vec>
auto find_named(Vec& v, std::string_view name) {
    return std::find_if(v.begin(), v.end(), [name](const auto& p) { return p.first == name; });
}

const ParamSpec* find_spec(const std::vector<ParamSpec>& specs, std::string_view name) {
    for (const auto& s : specs)
        if (s.name == name) return &s;
    return nullptr;
}

void check_value(const ParamSpec& spec, double value, const std::string& field) {
    if (!std::isfinite(value)) throw ConfigError(field, "value must be finite");
    switch (spec.kind) {
        case ParamKind::Probability:
            if (value < 0.0 || value > 1.0) throw ConfigError(field, std::to_string(value) + " outside [0, 1]");
            break;
        case ParamKind::NonNegative:
            if (value < 0.0) throw ConfigError(field, "must be non-negative");
            break;
        case ParamKind::PositiveInteger:
            if (value < 1.0 || std::floor(value) != value) throw ConfigError(field, "must be a positive integer");
            break;
        case ParamKind::Flag:
            if (value != 0.0 && value != 1.0) throw ConfigError(field, "must be 0 or 1");
            break;
        case ParamKind::Real:
            break;
    }
}

}  // namespace

double Parameters::scalar(std::string_view name) const {
    auto it = find_named(scalars_, name);
    if (it == scalars_.end()) throw ConfigError("model." + std::string(name), "parameter not resolved");
    return it->second;
}

bool Parameters::has_scalar(std::string_view name) const { return find_named(scalars_, name) != scalars_.end(); }

std::span<const double> Parameters::node(std::string_view name) const {
    auto it = find_named(nodes_, name);
    if (it == nodes_.end()) throw ConfigError("nodes." + std::string(name), "parameter not resolved");
    return it->second;
}

std::span<const double> Parameters::edge(std::string_view name) const {
    auto it = find_named(edges_, name);
    if (it == edges_.end()) throw ConfigError("edges." + std::string(name), "parameter not resolved");
    return it->second;
}

void Parameters::set_scalar(std::string name, double value) {
    auto it = find_named(scalars_, name);
    if (it != scalars_.end()) it->second = value;
    else scalars_.emplace_back(std::move(name), value);
}

void Parameters::set_node(std::string name, std::vector<double> values) {
    auto it = find_named(nodes_, name);
    if (it != nodes_.end()) it->second = std::move(values);
    else nodes_.emplace_back(std::move(name), std::move(values));
}

void Parameters::set_edge(std::string name, std::vector<double> values) {
    auto it = find_named(edges_, name);
    if (it != edges_.end()) it->second = std::move(values);
    else edges_.emplace_back(std::move(name), std::move(values));
}

Parameters resolve_parameters(const ModelInfo& info, const ModelConfig& config, std::size_t node_count,
                              const Graph* graph) {
    Parameters out;
    for (const auto& [name, value] : config.model_params) {
        const std::string field = "model." + name;
        if (name == kPercentageInfected) {
            if (!info.seed_status) throw ConfigError(field, "model " + info.name + " has no seed status");
            if (value < 0.0 || value > 1.0) throw ConfigError(field, std::to_string(value) + " outside [0, 1]");
            continue;
        }
        const ParamSpec* spec = find_spec(info.model_params, name);
        if (!spec) spec = find_spec(info.node_params, name);
        if (!spec) spec = find_spec(info.edge_params, name);
        if (!spec) throw ConfigError(field, "unknown parameter for model " + info.name);
        check_value(*spec, value, field);
    }

    for (const auto& spec : info.model_params) {
        auto it = config.model_params.find(spec.name);
        if (it != config.model_params.end()) out.set_scalar(spec.name, it->second);
        else if (spec.default_value) out.set_scalar(spec.name, *spec.default_value);
        else throw ConfigError("model." + spec.name, "required parameter missing");
    }

    for (const auto& [name, values] : config.node_params)
        if (!find_spec(info.node_params, name))
            throw ConfigError("nodes." + name, "unknown node parameter for model " + info.name);
    for (const auto& spec : info.node_params) {
        auto global = config.model_params.find(spec.name);
        std::optional<double> fill = global != config.model_params.end() ? std::optional<double>(global->second)
                                                                           : spec.default_value;
        auto per_node = config.node_params.find(spec.name);
        const bool complete = per_node != config.node_params.end() && per_node->second.size() == node_count;
        if (!fill && !complete) throw ConfigError("nodes." + spec.name, "required parameter missing for some nodes");
        std::vector<double> values(node_count, fill.value_or(0.0));
        if (per_node != config.node_params.end()) {
            for (const auto& [node, value] : per_node->second) {
                const std::string field = "nodes." + spec.name + "." + std::to_string(node);
                if (node >= node_count) throw ConfigError(field, "node id out of range");
                check_value(spec, value, field);
                values[node] = value;
            }
        }
        out.set_node(spec.name, std::move(values));
    }

    for (const auto& [name, values] : config.edge_params)
        if (!find_spec(info.edge_params, name))
            throw ConfigError("edges." + name, "unknown edge parameter for model " + info.name);
    if (!info.edge_params.empty()) {
        if (!graph) throw ConfigError("edges", "edge parameters need a static graph");
        for (const auto& spec : info.edge_params) {
            auto global = config.model_params.find(spec.name);
            std::optional<double> fill = global != config.model_params.end()
                                             ? std::optional<double>(global->second)
                                             : spec.default_value;
            if (!fill) throw ConfigError("edges." + spec.name, "required parameter missing");
            std::vector<double> values(graph->in_arc_count(), *fill);
            auto assign = [&](NodeId from, NodeId to, double value) {
                auto in = graph->in_neighbors(to);
                auto pos = std::lower_bound(in.begin(), in.end(), from);
                values[graph->in_arc_offset(to) + static_cast<std::size_t>(pos - in.begin())] = value;
            };
            auto per_edge = config.edge_params.find(spec.name);
            if (per_edge != config.edge_params.end()) {
                for (const auto& e : per_edge->second) {
                    const std::string field =
                        "edges." + spec.name + "." + std::to_string(e.u) + "-" + std::to_string(e.v);
                    if (!graph->has_edge(e.u, e.v)) throw ConfigError(field, "not an edge of the graph");
                    check_value(spec, e.value, field);
                    assign(e.u, e.v, e.value);
                    if (!graph->directed()) assign(e.v, e.u, e.value);
                }
            }
            out.set_edge(spec.name, std::move(values));
        }
    }
    validate_initial(info, config, node_count);
    return out;
}

void validate_initial(const ModelInfo& info, const ModelConfig& config, std::size_t node_count) {
    const auto pct = config.model_params.find(kPercentageInfected);
    if (const auto* fractions = std::get_if<Fractions>(&config.initial)) {
        double total = pct != config.model_params.end() ? pct->second : 0.0;
        for (const auto& [status, fraction] : fractions->by_status) {
            const std::string field = "initial.fractions." + status;
            auto code = info.status_code(status);
            if (!code) throw ConfigError(field, "unknown status for model " + info.name);
            if (*code == info.base_status) throw ConfigError(field, "the base status takes the unassigned mass");
            if (pct != config.model_params.end() && code == info.seed_status)
                throw ConfigError(field, "conflicts with model.percentage_infected");
            if (!(fraction >= 0.0 && fraction <= 1.0)) throw ConfigError(field, "fraction outside [0, 1]");
            total += fraction;
        }
        if (total > 1.0 + 1e-12) throw ConfigError("initial.fractions", "fractions sum to more than 1");
    } else {
        const auto& planted = std::get<Planted>(config.initial);
        if (pct != config.model_params.end())
            throw ConfigError("model.percentage_infected", "cannot be combined with a planted configuration");
        for (const auto& [node, status] : planted.statuses) {
            const std::string field = "initial.planted." + std::to_string(node);
            if (node >= node_count) throw ConfigError(field, "node id out of range");
            if (!info.status_code(status)) throw ConfigError(field, "unknown status '" + status + "'");
        }
    }
}

}  // namespace netdiff
