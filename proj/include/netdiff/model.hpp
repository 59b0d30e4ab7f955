#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "netdiff/config.hpp"
#include "netdiff/graph.hpp"
#include "netdiff/rng.hpp"
#include "netdiff/types.hpp"

namespace netdiff {

enum class ParamKind { Probability, NonNegative, Real, PositiveInteger, Flag };

struct ParamSpec {
    std::string name;
    ParamKind kind = ParamKind::Probability;
    std::optional<double> default_value;  // nullopt: required
    std::string description;
};

enum class TopologyKind { Static, Dynamic };
enum class TimeUnit { Iteration, MicroUpdate };

/// Model metadata: status vocabulary and declared parameters. Status codes are
/// indices into `statuses`.
struct ModelInfo {
    std::string name;
    std::string description;
    std::vector<std::string> statuses;
    Status base_status = 0;
    std::optional<Status> seed_status;  // target of percentage_infected
    std::vector<ParamSpec> model_params;
    std::vector<ParamSpec> node_params;
    std::vector<ParamSpec> edge_params;
    TopologyKind topology = TopologyKind::Static;
    TimeUnit time_unit = TimeUnit::Iteration;

    std::optional<Status> status_code(std::string_view status) const;
    std::size_t status_count() const noexcept { return statuses.size(); }
};

/// Parameters after validation and defaulting. Node values are indexed by node
/// id; edge values are aligned with the graph's in-arc array.
class Parameters {
public:
    double scalar(std::string_view name) const;
    std::span<const double> node(std::string_view name) const;
    std::span<const double> edge(std::string_view name) const;
    bool has_scalar(std::string_view name) const;

    void set_scalar(std::string name, double value);
    void set_node(std::string name, std::vector<double> values);
    void set_edge(std::string name, std::vector<double> values);

private:
    std::vector<std::pair<std::string, double>> scalars_;
    std::vector<std::pair<std::string, std::vector<double>>> nodes_;
    std::vector<std::pair<std::string, std::vector<double>>> edges_;
};

struct StepContext {
    const Graph& graph;
    const Parameters& params;
    std::uint64_t iteration = 0;
};

/// A diffusion model: metadata plus a synchronous update rule.
///
/// `step` must read statuses from `before` only (the frozen pre-iteration
/// array) and write outcomes into `after`, which starts as a copy of `before`.
/// Models defined as a sequence of asynchronous micro-updates read and write
/// `after` directly.
class Model {
public:
    virtual ~Model() = default;

    virtual const ModelInfo& info() const = 0;

    /// Cross-parameter checks beyond per-parameter ranges; throws ConfigError.
    virtual void validate(const Parameters&, std::size_t /*node_count*/) const {}

    /// Hook run after generic initial seeding (e.g. drawing blocked nodes).
    virtual void prepare_initial(std::span<Status>, const Parameters&, const Graph*, Rng&) const {}

    virtual void step(const StepContext& ctx, std::span<const Status> before, std::span<Status> after,
                      Rng& rng) const = 0;
};

/// Validates `config` against `info` and materializes defaults. `graph` is
/// needed to align edge parameters; pass nullptr for dynamic topologies.
Parameters resolve_parameters(const ModelInfo& info, const ModelConfig& config, std::size_t node_count,
                              const Graph* graph);

/// Validates the initial-status section and returns per-status node counts
/// (fraction mode) or checks the planted map (planted mode).
void validate_initial(const ModelInfo& info, const ModelConfig& config, std::size_t node_count);

}  // namespace netdiff
