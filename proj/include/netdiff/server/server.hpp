#pragma once

#include <chrono>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "netdiff/server/exploratories.hpp"
#include "netdiff/server/store.hpp"

namespace netdiff::server {

struct ServerOptions {
    std::chrono::seconds ttl{3600};
    std::optional<std::filesystem::path> exploratory_dir;
    std::optional<std::filesystem::path> snapshot_dir;
    Clock clock;
};

struct Resource {
    std::string method;
    std::string path;
    std::string category;
    std::string description;
};

/// Every route served, grouped by category.
const std::vector<Resource>& resources();

/// HTTP/1.1 JSON experiment service.
class Server {
public:
    explicit Server(ServerOptions options = {});
    ~Server();
    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    /// Binds the socket; port 0 picks a free port. Returns the bound port or -1.
    int bind(const std::string& host, int port);
    /// Serves until stop(); call after bind().
    bool listen_after_bind();
    void wait_until_ready() const;
    void stop();

    ExperimentStore& store();
    const std::vector<Exploratory>& exploratories() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace netdiff::server
