#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "netdiff/config.hpp"
#include "netdiff/graph.hpp"
#include "netdiff/model.hpp"
#include "netdiff/rng.hpp"
#include "netdiff/temporal.hpp"

namespace netdiff {

/// A frozen topology: static graph, snapshot sequence or temporal graph.
using Network = std::variant<std::shared_ptr<const Graph>, std::shared_ptr<const SnapshotSequence>,
                             std::shared_ptr<const TemporalGraph>>;

enum class ExecutionMode { Static, Snapshots, Interactions };

std::size_t network_node_count(const Network& network);
std::string network_digest(const Network& network);
std::string to_string(ExecutionMode mode);

struct SimulationState {
    std::vector<Status> statuses;
    std::uint64_t iteration_index = 0;
};

/// Incremental record of one iteration. Iteration 0 lists every node.
struct IterationDelta {
    std::uint64_t iteration = 0;
    std::vector<std::pair<NodeId, Status>> changed;  // ascending node id
    std::vector<std::uint64_t> node_count;            // indexed by status code
    std::vector<std::int64_t> status_delta;           // indexed by status code
    std::optional<Timestamp> timestamp;               // snapshot id / timestamp on dynamic topologies

    bool operator==(const IterationDelta&) const = default;
};

using Trajectory = std::vector<IterationDelta>;

/// Folds the `changed` maps of a trajectory (starting at iteration 0) into a status array.
std::vector<Status> replay(std::span<const IterationDelta> trajectory, std::size_t node_count);

/// One model attached to one network.
///
/// Single-threaded; independent instances may run concurrently over the same
/// network since topologies are immutable.
class Simulation {
public:
    Simulation(const Model& model, Network network, ModelConfig config);

    /// Seeds the initial statuses and resets the iteration counter. The same
    /// seed always yields the same initial state and trajectory.
    void set_initial_status(std::uint64_t seed);
    /// Uses config().seed; throws ConfigError when absent.
    void set_initial_status();

    /// Iteration 0 returns the initial status dump; each later call applies one update.
    IterationDelta iteration();
    /// Equivalent to n calls of iteration(). n = 0 is a ParameterError.
    Trajectory iteration_bunch(std::size_t n);

    bool initialized() const noexcept { return initialized_; }
    const SimulationState& state() const;
    const Model& model() const noexcept { return *model_; }
    const ModelConfig& config() const noexcept { return config_; }
    const Network& network() const noexcept { return network_; }
    const Parameters& parameters() const noexcept { return params_; }
    std::uint64_t seed() const noexcept { return seed_; }
    ExecutionMode mode() const noexcept { return mode_; }
    std::size_t node_count() const noexcept { return node_count_; }
    /// Update steps left before the dynamic topology is exhausted; nullopt for static graphs.
    std::optional<std::size_t> steps_remaining() const;
    /// Counts per status in the current state.
    const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }

private:
    const Graph& topology_for_step(std::uint64_t step, std::optional<Timestamp>& timestamp);

    const Model* model_;
    Network network_;
    ModelConfig config_;
    Parameters params_;
    ExecutionMode mode_ = ExecutionMode::Static;
    std::size_t node_count_ = 0;
    std::uint64_t seed_ = 0;
    bool initialized_ = false;
    bool dumped_ = false;
    Rng rng_;
    SimulationState state_;
    std::vector<Status> scratch_;
    std::vector<std::uint64_t> counts_;
    Graph slice_cache_;
};

struct MultiRunOptions {
    std::size_t executions = 1;
    std::size_t iterations = 1;  // deltas per run, iteration 0 included
    std::uint64_t seed = 0;
    /// Per-run planted seed sets; when present its length must equal `executions`.
    std::optional<std::vector<std::vector<NodeId>>> infected_sets;
    std::size_t jobs = 0;  // 0: hardware concurrency
};

/// Runs independent simulations. Run k is seeded with derive_seed(seed, k), so
/// results do not depend on `jobs` or on how many runs are requested.
std::vector<Trajectory> multi_runs(const Model& model, const Network& network, const ModelConfig& config,
                                   const MultiRunOptions& options);

}  // namespace netdiff
