#include "netdiff/server/store.hpp"

#include <fstream>

#include "netdiff/json_io.hpp"

namespace netdiff::server {

AttachedModel& Experiment::model(const std::string& id) {
    for (auto& m : models)
        if (m.id == id) return m;
    throw NotFoundError("no model with id '" + id + "' in this experiment");
}

ExperimentStore::ExperimentStore(std::chrono::seconds ttl, Clock clock, std::optional<std::filesystem::path> snapshot_dir)
    : ttl_(ttl), clock_(std::move(clock)), snapshot_dir_(std::move(snapshot_dir)) {
    std::random_device rd;
    std::seed_seq seq{rd(), rd(), rd(), rd(), rd(), rd(), rd(), rd()};
    rng_.seed(seq);
}

std::chrono::steady_clock::time_point ExperimentStore::now() const {
    return clock_ ? clock_() : std::chrono::steady_clock::now();
}

std::uint64_t ExperimentStore::draw_seed() {
    std::lock_guard lock(rng_mutex_);
    return rng_() >> 11;  // fits a JSON double exactly
}

std::string ExperimentStore::create() {
    purge_expired();
    static constexpr char hex[] = "0123456789abcdef";
    auto entry = std::make_shared<Entry>();
    std::unique_lock lock(map_mutex_);
    std::string token;
    do {
        std::uint64_t a, b;
        {
            std::lock_guard rng_lock(rng_mutex_);
            a = rng_();
            b = rng_();
        }
        token.clear();
        for (std::uint64_t word : {a, b})
            for (int shift = 60; shift >= 0; shift -= 4) token += hex[(word >> shift) & 0xF];
    } while (entries_.count(token));
    entry->experiment.token = token;
    entry->experiment.created_at = entry->experiment.last_touched = now();
    entries_.emplace(token, std::move(entry));
    return token;
}

std::shared_ptr<ExperimentStore::Entry> ExperimentStore::lookup(const std::string& token) {
    purge_expired();
    std::shared_lock lock(map_mutex_);
    auto it = entries_.find(token);
    if (it == entries_.end()) throw NotFoundError("unknown or expired token");
    return it->second;
}

void ExperimentStore::destroy(const std::string& token) {
    std::shared_ptr<Entry> entry;
    {
        std::unique_lock lock(map_mutex_);
        auto it = entries_.find(token);
        if (it == entries_.end()) throw NotFoundError("unknown or expired token");
        entry = std::move(it->second);
        entries_.erase(it);
    }
    std::lock_guard lock(entry->mutex);
    entry->dead = true;
    remove_snapshots(token);
}

std::size_t ExperimentStore::purge_expired() {
    const auto t = now();
    std::vector<std::shared_ptr<Entry>> expired;
    {
        std::unique_lock lock(map_mutex_);
        for (auto it = entries_.begin(); it != entries_.end();) {
            // An entry whose lock is held is in use and therefore not idle.
            std::unique_lock entry_lock(it->second->mutex, std::try_to_lock);
            if (entry_lock.owns_lock() && t - it->second->experiment.last_touched > ttl_) {
                it->second->dead = true;
                expired.push_back(std::move(it->second));
                it = entries_.erase(it);
            } else {
                ++it;
            }
        }
    }
    for (const auto& e : expired) remove_snapshots(e->experiment.token);
    return expired.size();
}

std::size_t ExperimentStore::size() const {
    std::shared_lock lock(map_mutex_);
    return entries_.size();
}

void ExperimentStore::persist(const Experiment& experiment, const AttachedModel& model) const {
    if (!snapshot_dir_) return;
    const auto dir = *snapshot_dir_ / experiment.token;
    std::filesystem::create_directories(dir);
    std::ofstream out(dir / (model.id + ".trajectory.json"), std::ios::binary | std::ios::trunc);
    out << trajectory_to_json(*model.sim, model.trajectory).dump() << '\n';
}

void ExperimentStore::remove_snapshots(const std::string& token) const {
    if (!snapshot_dir_) return;
    std::error_code ec;
    std::filesystem::remove_all(*snapshot_dir_ / token, ec);
}

}  // namespace netdiff::server
