#include "netdiff/registry.hpp"

#include <memory>

#include "netdiff/error.hpp"
#include "netdiff/models/dynamic.hpp"
#include "netdiff/models/epidemic.hpp"
#include "netdiff/models/opinion.hpp"

namespace netdiff {

namespace {

const std::vector<std::unique_ptr<Model>>& registry() {
    static const auto models = [] {
        std::vector<std::unique_ptr<Model>> all;
        for (auto* make : {&epidemic::make_models, &opinion::make_models, &dynamic::make_models})
            for (auto& m : make()) all.push_back(std::move(m));
        return all;
    }();
    return models;
}

}  // namespace

const Model* find_model(std::string_view name) {
    for (const auto& m : registry())
        if (m->info().name == name) return m.get();
    return nullptr;
}

const Model& get_model(std::string_view name) {
    if (const Model* m = find_model(name)) return *m;
    std::string known;
    for (const auto& n : model_names()) known += (known.empty() ? "" : ", ") + n;
    throw ConfigError("model", "unknown model '" + std::string(name) + "'; known models: " + known);
}

std::vector<std::string> model_names() {
    std::vector<std::string> names;
    for (const auto& m : registry()) names.push_back(m->info().name);
    return names;
}

}  // namespace netdiff
