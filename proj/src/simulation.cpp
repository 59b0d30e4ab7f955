#include "netdiff/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "netdiff/error.hpp"

namespace netdiff {

std::size_t network_node_count(const Network& network) {
    return std::visit([](const auto& ptr) -> std::size_t { return ptr ? ptr->node_count() : 0; }, network);
}

std::string network_digest(const Network& network) {
    return std::visit([](const auto& ptr) -> std::string { return ptr ? ptr->digest() : std::string(); }, network);
}

std::string to_string(ExecutionMode mode) {
    switch (mode) {
        case ExecutionMode::Static: return "static";
        case ExecutionMode::Snapshots: return "snapshots";
        case ExecutionMode::Interactions: return "interactions";
    }
    return "static";
}

std::vector<Status> replay(std::span<const IterationDelta> trajectory, std::size_t node_count) {
    std::vector<Status> statuses(node_count, 0);
    for (const auto& delta : trajectory)
        for (const auto& [node, status] : delta.changed) statuses.at(node) = status;
    return statuses;
}

Simulation::Simulation(const Model& model, Network network, ModelConfig config)
    : model_(&model), network_(std::move(network)), config_(std::move(config)) {
    const ModelInfo& info = model.info();
    const Graph* graph = nullptr;
    if (const auto* g = std::get_if<std::shared_ptr<const Graph>>(&network_)) {
        if (!*g) throw ConfigError("network", "no network attached");
        mode_ = ExecutionMode::Static;
        graph = g->get();
    } else if (const auto* s = std::get_if<std::shared_ptr<const SnapshotSequence>>(&network_)) {
        if (!*s) throw ConfigError("network", "no network attached");
        mode_ = ExecutionMode::Snapshots;
    } else {
        if (!std::get<std::shared_ptr<const TemporalGraph>>(network_))
            throw ConfigError("network", "no network attached");
        mode_ = ExecutionMode::Interactions;
    }
    if (info.topology == TopologyKind::Static && mode_ != ExecutionMode::Static)
        throw ConfigError("network", "model " + info.name + " requires a static graph");
    if (info.topology == TopologyKind::Dynamic && mode_ == ExecutionMode::Static)
        throw ConfigError("network", "model " + info.name + " requires a snapshot sequence or a temporal graph");
    if (config_.execution_mode) {
        const auto& wanted = *config_.execution_mode;
        if (info.topology == TopologyKind::Static)
            throw ConfigError("execution_mode", "only dynamic models accept an execution mode");
        if (wanted != "snapshots" && wanted != "interactions")
            throw ConfigError("execution_mode", "expected 'snapshots' or 'interactions'");
        if (wanted != to_string(mode_))
            throw ConfigError("execution_mode", "'" + wanted + "' does not match the attached " +
                                                    (mode_ == ExecutionMode::Snapshots ? "snapshot sequence"
                                                                                       : "temporal graph"));
    }
    node_count_ = network_node_count(network_);
    params_ = resolve_parameters(info, config_, node_count_, graph);
    model.validate(params_, node_count_);
}

void Simulation::set_initial_status() {
    if (!config_.seed) throw ConfigError("seed", "no seed configured");
    set_initial_status(*config_.seed);
}

void Simulation::set_initial_status(std::uint64_t seed) {
    const ModelInfo& info = model_->info();
    seed_ = seed;
    rng_ = Rng(seed);
    auto& statuses = state_.statuses;
    statuses.assign(node_count_, info.base_status);

    if (const auto* fractions = std::get_if<Fractions>(&config_.initial)) {
        std::vector<std::pair<Status, std::size_t>> quota;
        auto count_for = [this](double fraction) {
            auto k = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(node_count_)));
            if (fraction > 0.0 && k == 0) k = 1;
            return k;
        };
        // Status declaration order, so that the draw sequence does not depend on map ordering.
        for (std::size_t code = 0; code < info.statuses.size(); ++code) {
            double fraction = 0.0;
            auto it = fractions->by_status.find(info.statuses[code]);
            if (it != fractions->by_status.end()) fraction = it->second;
            auto pct = config_.model_params.find(kPercentageInfected);
            if (pct != config_.model_params.end() && info.seed_status && *info.seed_status == code)
                fraction = pct->second;
            if (fraction > 0.0) quota.emplace_back(static_cast<Status>(code), count_for(fraction));
        }
        std::size_t total = 0;
        for (auto& [code, k] : quota) {
            k = std::min(k, node_count_ - total);
            total += k;
        }
        if (total > 0) {
            std::vector<NodeId> perm(node_count_);
            std::iota(perm.begin(), perm.end(), NodeId{0});
            for (std::size_t i = 0; i < total; ++i) {
                const std::size_t j = i + rng_.below(node_count_ - i);
                std::swap(perm[i], perm[j]);
            }
            std::size_t cursor = 0;
            for (const auto& [code, k] : quota)
                for (std::size_t i = 0; i < k; ++i) statuses[perm[cursor++]] = code;
        }
    } else {
        for (const auto& [node, status] : std::get<Planted>(config_.initial).statuses)
            statuses[node] = *info.status_code(status);
    }

    const Graph* graph = nullptr;
    if (const auto* g = std::get_if<std::shared_ptr<const Graph>>(&network_)) graph = g->get();
    model_->prepare_initial(statuses, params_, graph, rng_);

    counts_.assign(info.statuses.size(), 0);
    for (Status s : statuses) ++counts_[s];
    state_.iteration_index = 0;
    dumped_ = false;
    initialized_ = true;
}

const SimulationState& Simulation::state() const {
    if (!initialized_) throw SimulationError("simulation state is not initialized");
    return state_;
}

std::optional<std::size_t> Simulation::steps_remaining() const {
    const std::uint64_t done = state_.iteration_index;
    switch (mode_) {
        case ExecutionMode::Static: return std::nullopt;
        case ExecutionMode::Snapshots: {
            const auto total = std::get<std::shared_ptr<const SnapshotSequence>>(network_)->size();
            return total > done ? total - done : 0;
        }
        case ExecutionMode::Interactions: {
            const auto total = std::get<std::shared_ptr<const TemporalGraph>>(network_)->timestamps().size();
            return total > done ? total - done : 0;
        }
    }
    return std::nullopt;
}

const Graph& Simulation::topology_for_step(std::uint64_t step, std::optional<Timestamp>& timestamp) {
    switch (mode_) {
        case ExecutionMode::Static: return *std::get<std::shared_ptr<const Graph>>(network_);
        case ExecutionMode::Snapshots: {
            const auto& seq = *std::get<std::shared_ptr<const SnapshotSequence>>(network_);
            if (step > seq.size()) throw SimulationError("no snapshot left: the sequence has " +
                                                         std::to_string(seq.size()) + " snapshots");
            const auto& snap = seq[step - 1];
            timestamp = snap.id;
            return snap.graph;
        }
        case ExecutionMode::Interactions: {
            const auto& tg = *std::get<std::shared_ptr<const TemporalGraph>>(network_);
            const auto& domain = tg.timestamps();
            if (step > domain.size()) throw SimulationError("no timestamp left: the temporal graph has " +
                                                            std::to_string(domain.size()) + " timestamps");
            timestamp = domain[step - 1];
            slice_cache_ = tg.slice(*timestamp);
            return slice_cache_;
        }
    }
    throw SimulationError("unknown execution mode");
}

IterationDelta Simulation::iteration() {
    if (!initialized_) throw SimulationError("iteration on an uninitialized simulation; call set_initial_status first");
    const auto status_count = counts_.size();
    IterationDelta delta;
    delta.status_delta.assign(status_count, 0);
    if (!dumped_) {
        dumped_ = true;
        delta.iteration = 0;
        delta.changed.reserve(node_count_);
        for (NodeId v = 0; v < node_count_; ++v) delta.changed.emplace_back(v, state_.statuses[v]);
        delta.node_count = counts_;
        return delta;
    }

    const std::uint64_t step = state_.iteration_index + 1;
    std::optional<Timestamp> timestamp;
    const Graph& graph = topology_for_step(step, timestamp);
    scratch_ = state_.statuses;
    StepContext ctx{graph, params_, step};
    model_->step(ctx, state_.statuses, scratch_, rng_);

    const auto& before = state_.statuses;
    for (NodeId v = 0; v < node_count_; ++v) {
        if (before[v] != scratch_[v]) {
            delta.changed.emplace_back(v, scratch_[v]);
            --delta.status_delta[before[v]];
            ++delta.status_delta[scratch_[v]];
        }
    }
    for (std::size_t s = 0; s < status_count; ++s)
        counts_[s] = static_cast<std::uint64_t>(static_cast<std::int64_t>(counts_[s]) + delta.status_delta[s]);
    state_.statuses.swap(scratch_);
    state_.iteration_index = step;
    delta.iteration = step;
    delta.node_count = counts_;
    delta.timestamp = timestamp;
    return delta;
}

Trajectory Simulation::iteration_bunch(std::size_t n) {
    if (n == 0) throw ParameterError("iteration_bunch requires n >= 1");
    Trajectory out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(iteration());
    return out;
}

std::vector<Trajectory> multi_runs(const Model& model, const Network& network, const ModelConfig& config,
                                   const MultiRunOptions& options) {
    if (options.executions == 0) throw ParameterError("multi_runs requires at least one execution");
    if (options.infected_sets && options.infected_sets->size() != options.executions)
        throw ParameterError("infected_sets has " + std::to_string(options.infected_sets->size()) +
                             " entries for " + std::to_string(options.executions) + " executions");

    const ModelInfo& info = model.info();
    std::vector<ModelConfig> configs(options.executions, config);
    if (options.infected_sets) {
        if (!info.seed_status) throw ConfigError("infected_sets", "model " + info.name + " has no seed status");
        const std::string& seed_name = info.statuses[*info.seed_status];
        for (std::size_t k = 0; k < options.executions; ++k) {
            configs[k].model_params.erase(kPercentageInfected);
            Planted planted;
            for (NodeId v : (*options.infected_sets)[k]) planted.statuses[v] = seed_name;
            configs[k].initial = std::move(planted);
        }
    }
    // Validate once up front so configuration errors surface on the calling thread.
    Simulation probe(model, network, configs.front());

    std::vector<Trajectory> results(options.executions);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t k = next++; k < options.executions; k = next++) {
            try {
                Simulation sim(model, network, configs[k]);
                sim.set_initial_status(derive_seed(options.seed, k));
                results[k] = sim.iteration_bunch(options.iterations);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    std::size_t jobs = options.jobs ? options.jobs : std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min(jobs, options.executions);
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < jobs; ++i) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    return results;
}

}  // namespace netdiff
