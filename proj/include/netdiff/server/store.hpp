#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <string>
#include <vector>

#include "netdiff/error.hpp"
#include "netdiff/simulation.hpp"

namespace netdiff::server {

class NotFoundError : public Error {
public:
    using Error::Error;
};

class ConflictError : public Error {
public:
    using Error::Error;
};

using Clock = std::function<std::chrono::steady_clock::time_point()>;

struct AttachedModel {
    std::string id;
    std::unique_ptr<Simulation> sim;
    Trajectory trajectory;  // every delta produced since the last reset
};

struct Experiment {
    std::string token;
    std::optional<Network> network;
    std::vector<AttachedModel> models;
    std::uint64_t next_model_id = 0;
    std::chrono::steady_clock::time_point created_at;
    std::chrono::steady_clock::time_point last_touched;

    AttachedModel& model(const std::string& id);
};

/// Live experiments keyed by token. Operations on one experiment are
/// serialized by its own mutex; distinct experiments proceed in parallel.
class ExperimentStore {
public:
    explicit ExperimentStore(std::chrono::seconds ttl = std::chrono::seconds(3600), Clock clock = {},
                             std::optional<std::filesystem::path> snapshot_dir = std::nullopt);

    /// New empty experiment; returns its 128-bit hex token.
    std::string create();
    /// Throws NotFoundError for unknown or expired tokens.
    void destroy(const std::string& token);

    /// Runs `fn(Experiment&)` under the experiment's lock and refreshes its expiry.
    template <class Fn>
    auto with(const std::string& token, Fn&& fn) {
        auto entry = lookup(token);
        std::lock_guard lock(entry->mutex);
        if (entry->dead) throw NotFoundError("unknown or expired token");
        entry->experiment.last_touched = now();
        return fn(entry->experiment);
    }

    /// Drops experiments idle for longer than the TTL; returns how many.
    std::size_t purge_expired();
    std::size_t size() const;
    std::chrono::seconds ttl() const noexcept { return ttl_; }

    /// Fresh seed for configurations that do not carry one.
    std::uint64_t draw_seed();

    /// Writes the trajectory of one model to the snapshot directory, if configured.
    void persist(const Experiment& experiment, const AttachedModel& model) const;

private:
    struct Entry {
        std::mutex mutex;
        bool dead = false;
        Experiment experiment;
    };

    std::shared_ptr<Entry> lookup(const std::string& token);
    std::chrono::steady_clock::time_point now() const;
    void remove_snapshots(const std::string& token) const;

    std::chrono::seconds ttl_;
    Clock clock_;
    std::optional<std::filesystem::path> snapshot_dir_;
    mutable std::shared_mutex map_mutex_;
    std::map<std::string, std::shared_ptr<Entry>> entries_;
    std::mutex rng_mutex_;
    std::mt19937_64 rng_;
};

}  // namespace netdiff::server
