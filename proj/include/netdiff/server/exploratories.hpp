#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "netdiff/json_io.hpp"

namespace netdiff::server {

/// A packaged scenario: a network plus model configurations with planted initial statuses.
struct Exploratory {
    std::string id;
    std::string description;
    json network;  // network_from_json document
    struct ModelEntry {
        std::string model;
        json config;  // config_from_json document
    };
    std::vector<ModelEntry> models;
};

Exploratory exploratory_from_json(const json& doc);
json exploratory_to_json(const Exploratory& e);

/// Scenarios shipped with the server.
std::vector<Exploratory> builtin_exploratories();
/// Every *.json file of `dir`, in file name order. Throws ConfigError/ParseError on a bad file.
std::vector<Exploratory> load_exploratories(const std::filesystem::path& dir);

}  // namespace netdiff::server
