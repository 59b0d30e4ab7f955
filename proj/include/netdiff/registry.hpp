#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "netdiff/model.hpp"

namespace netdiff {

/// Looks up a registered model by its exact name; nullptr when unknown.
const Model* find_model(std::string_view name);
/// As find_model, but throws ConfigError("model", ...) listing the known names.
const Model& get_model(std::string_view name);
/// Registered names in registration order.
std::vector<std::string> model_names();

}  // namespace netdiff
