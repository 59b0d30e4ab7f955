#include "netdiff/server/exploratories.hpp"

#include <algorithm>
#include <fstream>

#include "netdiff/error.hpp"

namespace netdiff::server {

Exploratory exploratory_from_json(const json& doc) {
    if (!doc.is_object()) throw ConfigError("exploratory", "expected an object");
    Exploratory e;
    if (!doc.contains("id") || !doc["id"].is_string()) throw ConfigError("exploratory.id", "missing id");
    e.id = doc["id"].get<std::string>();
    e.description = doc.value("description", "");
    if (!doc.contains("network")) throw ConfigError("exploratory.network", "missing network");
    e.network = doc["network"];
    if (!doc.contains("models") || !doc["models"].is_array() || doc["models"].empty())
        throw ConfigError("exploratory.models", "expected a non-empty list");
    for (const auto& m : doc["models"]) {
        if (!m.contains("model") || !m["model"].is_string())
            throw ConfigError("exploratory.models.model", "missing model name");
        e.models.push_back({m["model"].get<std::string>(), m.value("config", json::object())});
    }
    return e;
}

json exploratory_to_json(const Exploratory& e) {
    json models = json::array();
    for (const auto& m : e.models) models.push_back({{"model", m.model}, {"config", m.config}});
    return {{"id", e.id}, {"description", e.description}, {"network", e.network}, {"models", std::move(models)}};
}

std::vector<Exploratory> builtin_exploratories() {
    std::vector<Exploratory> out;

    out.push_back(exploratory_from_json(json::parse(R"({
        "id": "sir-hubs",
        "description": "SIR outbreak started from the three oldest hubs of a preferential attachment graph",
        "network": {"generator": "barabasi_albert", "params": {"n": 500, "m": 2}, "seed": 7},
        "models": [{"model": "SIR",
                    "config": {"model": {"beta": 0.05, "gamma": 0.1},
                               "initial": {"planted": {"0": "Infected", "1": "Infected", "2": "Infected"}},
                               "seed": 11}}]
    })")));

    out.push_back(exploratory_from_json(json::parse(R"({
        "id": "threshold-ring",
        "description": "Threshold cascade along a ring lattice seeded by two adjacent nodes",
        "network": {"generator": "watts_strogatz", "params": {"n": 100, "k": 4, "beta": 0.0}, "seed": 1},
        "models": [{"model": "Threshold",
                    "config": {"model": {"threshold": 0.25},
                               "initial": {"planted": {"0": "Infected", "1": "Infected"}},
                               "seed": 1}}]
    })")));

    json voter = json::parse(R"({
        "id": "voter-two-camps",
        "description": "Voter and majority rule dynamics from an even split between the two opinions",
        "network": {"generator": "erdos_renyi", "params": {"n": 100, "p": 0.08}, "seed": 3},
        "models": [{"model": "Voter", "config": {"model": {"sweep": 1}, "seed": 5}},
                   {"model": "MajorityRule", "config": {"model": {"r": 5, "sweep": 1}, "seed": 5}}]
    })");
    json planted = json::object();
    for (int v = 0; v < 50; ++v) planted[std::to_string(v)] = "Plus";
    for (auto& m : voter["models"]) m["config"]["initial"]["planted"] = planted;
    out.push_back(exploratory_from_json(voter));

    return out;
}

std::vector<Exploratory> load_exploratories(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    std::vector<Exploratory> out;
    for (const auto& file : files) {
        std::ifstream in(file);
        json doc = json::parse(in, nullptr, false);
        if (doc.is_discarded()) throw ParseError(file.filename().string() + ": invalid JSON");
        out.push_back(exploratory_from_json(doc));
    }
    return out;
}

}  // namespace netdiff::server
