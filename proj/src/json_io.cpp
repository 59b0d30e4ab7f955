#include "netdiff/json_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "netdiff/error.hpp"
#include "netdiff/generators.hpp"

namespace netdiff {

std::optional<NodeId> NodeNames::find(std::string_view label) const {
    return std::visit([&](const auto& ptr) -> std::optional<NodeId> {
        using T = std::decay_t<decltype(*ptr)>;
        if (!ptr) return std::nullopt;
        if constexpr (std::is_same_v<T, SnapshotSequence>) {
            if (ptr->empty()) return std::nullopt;
            return (*ptr)[0].graph.find_node(label);
        } else {
            return ptr->find_node(label);
        }
    }, network_);
}

std::string NodeNames::label(NodeId id) const {
    return std::visit([&](const auto& ptr) -> std::string {
        using T = std::decay_t<decltype(*ptr)>;
        if constexpr (std::is_same_v<T, SnapshotSequence>) {
            if (ptr->empty()) return std::to_string(id);
            return (*ptr)[0].graph.label(id);
        } else {
            return ptr->label(id);
        }
    }, network_);
}

bool NodeNames::custom() const {
    const auto n = size();
    for (NodeId v = 0; v < n; ++v)
        if (label(v) != std::to_string(v)) return true;
    return false;
}

namespace {

bool is_count(const json& v) { return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0); }

std::string key_text(const json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    return j.dump();
}

NodeId resolve(const NodeNames& names, const json& label, const std::string& field) {
    const std::string text = key_text(label);
    if (auto id = names.find(text)) return *id;
    throw ConfigError(field, "unknown node '" + text + "'");
}

double number(const json& j, const std::string& field) {
    if (j.is_boolean()) return j.get<bool>() ? 1.0 : 0.0;
    if (!j.is_number()) throw ConfigError(field, "expected a number");
    return j.get<double>();
}

const json& object(const json& j, const std::string& field) {
    if (!j.is_object()) throw ConfigError(field, "expected an object");
    return j;
}

}  // namespace

ModelConfig config_from_json(const json& doc, const NodeNames& names) {
    ModelConfig cfg;
    object(doc, "config");
    for (const auto& [key, value] : doc.items()) {
        if (key == "model") {
            for (const auto& [name, v] : object(value, "model").items())
                cfg.model_params[name] = number(v, "model." + name);
        } else if (key == "nodes") {
            for (const auto& [name, per_node] : object(value, "nodes").items()) {
                auto& target = cfg.node_params[name];
                for (const auto& [label, v] : object(per_node, "nodes." + name).items()) {
                    const std::string field = "nodes." + name + "." + label;
                    target[resolve(names, label, field)] = number(v, field);
                }
            }
        } else if (key == "edges") {
            for (const auto& [name, list] : object(value, "edges").items()) {
                const std::string field = "edges." + name;
                if (!list.is_array()) throw ConfigError(field, "expected a list of [u, v, value]");
                auto& target = cfg.edge_params[name];
                for (const auto& e : list) {
                    if (!e.is_array() || e.size() != 3) throw ConfigError(field, "expected [u, v, value]");
                    target.push_back({resolve(names, e[0], field), resolve(names, e[1], field), number(e[2], field)});
                }
            }
        } else if (key == "initial") {
            object(value, "initial");
            if (value.size() != 1) throw ConfigError("initial", "expected exactly one of 'fractions' or 'planted'");
            if (value.contains("fractions")) {
                Fractions f;
                for (const auto& [status, v] : object(value["fractions"], "initial.fractions").items())
                    f.by_status[status] = number(v, "initial.fractions." + status);
                cfg.initial = std::move(f);
            } else if (value.contains("planted")) {
                Planted p;
                for (const auto& [label, status] : object(value["planted"], "initial.planted").items()) {
                    const std::string field = "initial.planted." + label;
                    if (!status.is_string()) throw ConfigError(field, "expected a status name");
                    p.statuses[resolve(names, label, field)] = status.get<std::string>();
                }
                cfg.initial = std::move(p);
            } else {
                throw ConfigError("initial", "expected 'fractions' or 'planted'");
            }
        } else if (key == "seed") {
            if (!is_count(value)) throw ConfigError("seed", "expected a non-negative integer");
            cfg.seed = value.get<std::uint64_t>();
        } else if (key == "execution_mode") {
            if (!value.is_string()) throw ConfigError("execution_mode", "expected a string");
            cfg.execution_mode = value.get<std::string>();
        } else {
            throw ConfigError(key, "unknown configuration field");
        }
    }
    return cfg;
}

json config_to_json(const ModelConfig& cfg, const NodeNames& names) {
    json doc = json::object();
    doc["model"] = json::object();
    for (const auto& [name, v] : cfg.model_params) doc["model"][name] = v;
    if (!cfg.node_params.empty()) {
        json nodes = json::object();
        for (const auto& [name, per_node] : cfg.node_params) {
            json m = json::object();
            for (const auto& [node, v] : per_node) m[names.label(node)] = v;
            nodes[name] = std::move(m);
        }
        doc["nodes"] = std::move(nodes);
    }
    if (!cfg.edge_params.empty()) {
        json edges = json::object();
        for (const auto& [name, list] : cfg.edge_params) {
            json arr = json::array();
            for (const auto& e : list) arr.push_back({names.label(e.u), names.label(e.v), e.value});
            edges[name] = std::move(arr);
        }
        doc["edges"] = std::move(edges);
    }
    if (const auto* f = std::get_if<Fractions>(&cfg.initial)) {
        if (!f->by_status.empty()) doc["initial"]["fractions"] = f->by_status;
    } else {
        json planted = json::object();
        for (const auto& [node, status] : std::get<Planted>(cfg.initial).statuses) planted[names.label(node)] = status;
        doc["initial"]["planted"] = std::move(planted);
    }
    if (cfg.seed) doc["seed"] = *cfg.seed;
    if (cfg.execution_mode) doc["execution_mode"] = *cfg.execution_mode;
    return doc;
}

namespace {

double param(const json& params, const char* name, const std::string& generator) {
    const std::string field = "network.params." + std::string(name);
    if (!params.contains(name)) throw ConfigError(field, "required by generator " + generator);
    return number(params[name], field);
}

std::size_t count_param(const json& params, const char* name, const std::string& generator) {
    const double v = param(params, name, generator);
    if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v)))
        throw ConfigError("network.params." + std::string(name), "expected a non-negative integer");
    return static_cast<std::size_t>(v);
}

Network from_text(const std::string& text, const std::string& format, bool directed) {
    if (format == "edgelist") return std::make_shared<const Graph>(load_edge_list(text, directed));
    if (format == "temporal") return std::make_shared<const TemporalGraph>(load_temporal_edge_list(text, directed));
    if (format == "snapshots") return std::make_shared<const SnapshotSequence>(load_snapshots(text, directed));
    throw ConfigError("network.format", "expected 'edgelist', 'temporal' or 'snapshots'");
}

}  // namespace

Network network_from_json(const json& doc, const std::filesystem::path* base_dir) {
    object(doc, "network");
    const bool directed = doc.value("directed", false);
    const std::string format = doc.value("format", "edgelist");
    if (doc.contains("generator")) {
        const std::string name = doc["generator"].is_string() ? doc["generator"].get<std::string>() : "";
        const json params = doc.value("params", json::object());
        std::uint64_t seed = 0;
        if (doc.contains("seed")) {
            if (!is_count(doc["seed"])) throw ConfigError("network.seed", "expected a non-negative integer");
            seed = doc["seed"].get<std::uint64_t>();
        }
        if (name == "erdos_renyi")
            return std::make_shared<const Graph>(erdos_renyi(count_param(params, "n", name), param(params, "p", name), seed));
        if (name == "barabasi_albert")
            return std::make_shared<const Graph>(
                barabasi_albert(count_param(params, "n", name), count_param(params, "m", name), seed));
        if (name == "watts_strogatz")
            return std::make_shared<const Graph>(watts_strogatz(count_param(params, "n", name),
                                                                count_param(params, "k", name),
                                                                param(params, "beta", name), seed));
        throw ConfigError("network.generator",
                          "unknown generator '" + name + "'; expected erdos_renyi, barabasi_albert or watts_strogatz");
    }
    if (doc.contains("upload")) {
        if (!doc["upload"].is_string()) throw ConfigError("network.upload", "expected the file contents as a string");
        return from_text(doc["upload"].get<std::string>(), format, directed);
    }
    if (doc.contains("path")) {
        if (!base_dir) throw ConfigError("network.path", "file paths are not accepted here");
        const std::filesystem::path path = *base_dir / doc["path"].get<std::string>();
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::filesystem::filesystem_error("cannot open network file", path,
                                                         std::make_error_code(std::errc::no_such_file_or_directory));
        std::stringstream ss;
        ss << in.rdbuf();
        return from_text(ss.str(), format, directed);
    }
    throw ConfigError("network", "expected 'generator', 'upload' or 'path'");
}

json network_summary(const Network& network) {
    json s;
    std::visit([&](const auto& ptr) {
        using T = std::decay_t<decltype(*ptr)>;
        s["nodes"] = ptr->node_count();
        s["directed"] = ptr->directed();
        s["digest"] = ptr->digest();
        if constexpr (std::is_same_v<T, Graph>) {
            s["type"] = "static";
            s["edges"] = ptr->edge_count();
        } else if constexpr (std::is_same_v<T, SnapshotSequence>) {
            s["type"] = "snapshots";
            s["snapshots"] = ptr->size();
        } else {
            s["type"] = "temporal";
            s["interactions"] = ptr->interaction_count();
            s["timestamps"] = ptr->timestamps().size();
        }
    }, network);
    return s;
}

std::string time_unit_name(const Simulation& sim) {
    const auto& params = sim.parameters();
    if (params.has_scalar("sweep") && params.scalar("sweep") != 0.0) return "sweep";
    return sim.model().info().time_unit == TimeUnit::MicroUpdate ? "micro_update" : "iteration";
}

namespace {

const char* kind_name(ParamKind kind) {
    switch (kind) {
        case ParamKind::Probability: return "probability";
        case ParamKind::NonNegative: return "non_negative";
        case ParamKind::Real: return "real";
        case ParamKind::PositiveInteger: return "positive_integer";
        case ParamKind::Flag: return "flag";
    }
    return "real";
}

json specs_to_json(const std::vector<ParamSpec>& specs) {
    json out = json::array();
    for (const auto& s : specs) {
        json p = {{"name", s.name}, {"kind", kind_name(s.kind)}, {"description", s.description},
                  {"required", !s.default_value.has_value()}};
        if (s.default_value) p["default"] = *s.default_value;
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace

json model_info_to_json(const ModelInfo& info) {
    json out = {{"name", info.name},
                {"description", info.description},
                {"statuses", info.statuses},
                {"base_status", info.statuses.at(info.base_status)},
                {"model_params", specs_to_json(info.model_params)},
                {"node_params", specs_to_json(info.node_params)},
                {"edge_params", specs_to_json(info.edge_params)},
                {"topology", info.topology == TopologyKind::Static ? "static" : "dynamic"},
                {"time_unit", info.time_unit == TimeUnit::Iteration ? "iteration" : "micro_update"}};
    out["seed_status"] = info.seed_status ? json(info.statuses.at(*info.seed_status)) : json(nullptr);
    return out;
}

json delta_to_json(const IterationDelta& d) {
    json status = json::object();
    for (const auto& [node, s] : d.changed) status[std::to_string(node)] = s;
    json counts = json::object();
    json deltas = json::object();
    for (std::size_t s = 0; s < d.node_count.size(); ++s) {
        counts[std::to_string(s)] = d.node_count[s];
        deltas[std::to_string(s)] = d.status_delta[s];
    }
    json out = {{"iteration", d.iteration}, {"status", std::move(status)}, {"node_count", std::move(counts)},
                {"status_delta", std::move(deltas)}};
    if (d.timestamp) out["timestamp"] = *d.timestamp;
    return out;
}

namespace {

std::size_t index_key(const std::string& key) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), v);
    if (ec != std::errc{} || ptr != key.data() + key.size()) throw ParseError("non-numeric key '" + key + "'");
    return v;
}

}  // namespace

IterationDelta delta_from_json(const json& doc) {
    IterationDelta d;
    d.iteration = doc.at("iteration").get<std::uint64_t>();
    for (const auto& [key, s] : doc.at("status").items())
        d.changed.emplace_back(static_cast<NodeId>(index_key(key)), s.get<Status>());
    std::sort(d.changed.begin(), d.changed.end());
    const auto& counts = doc.at("node_count");
    d.node_count.assign(counts.size(), 0);
    d.status_delta.assign(counts.size(), 0);
    for (const auto& [key, c] : counts.items()) d.node_count.at(index_key(key)) = c.get<std::uint64_t>();
    for (const auto& [key, c] : doc.at("status_delta").items()) d.status_delta.at(index_key(key)) = c.get<std::int64_t>();
    if (doc.contains("timestamp")) d.timestamp = doc["timestamp"].get<Timestamp>();
    return d;
}

json trajectory_to_json(const Simulation& sim, const Trajectory& trajectory) {
    const NodeNames names(sim.network());
    const ModelInfo& info = sim.model().info();
    json meta = {{"model", info.name},
                 {"params", config_to_json(sim.config(), names)},
                 {"seed", sim.seed()},
                 {"graph_digest", network_digest(sim.network())},
                 {"statuses", info.statuses},
                 {"time_unit", time_unit_name(sim)}};
    if (names.custom()) {
        json labels = json::array();
        for (NodeId v = 0; v < names.size(); ++v) labels.push_back(names.label(v));
        meta["labels"] = std::move(labels);
    }
    json iterations = json::array();
    for (const auto& d : trajectory) iterations.push_back(delta_to_json(d));
    return {{"meta", std::move(meta)}, {"iterations", std::move(iterations)}};
}

Trajectory trajectory_from_json(const json& doc) {
    Trajectory t;
    for (const auto& it : doc.at("iterations")) t.push_back(delta_from_json(it));
    return t;
}

}  // namespace netdiff
