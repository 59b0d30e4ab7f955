#include "netdiff/generators.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>
#include <vector>

#include "netdiff/error.hpp"
#include "netdiff/rng.hpp"

namespace netdiff {

namespace {

void check_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) throw ParameterError(std::string(what) + " must lie in [0, 1]");
}

}  // namespace

Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
    check_probability(p, "p");
    std::vector<Edge> edges;
    if (n >= 2 && p > 0.0) {
        if (p >= 1.0) {
            edges.reserve(n * (n - 1) / 2);
            for (NodeId v = 1; v < n; ++v)
                for (NodeId w = 0; w < v; ++w) edges.emplace_back(w, v);
        } else {
            Rng rng(seed);
            const double log_q = std::log1p(-p);
            edges.reserve(static_cast<std::size_t>(p * static_cast<double>(n) * static_cast<double>(n - 1) / 2 * 1.1) + 16);
            std::int64_t v = 1;
            std::int64_t w = -1;
            const auto nn = static_cast<std::int64_t>(n);
            while (v < nn) {
                const double r = rng.uniform();
                w += 1 + static_cast<std::int64_t>(std::floor(std::log1p(-r) / log_q));
                while (w >= v && v < nn) {
                    w -= v;
                    ++v;
                }
                if (v < nn) edges.emplace_back(static_cast<NodeId>(w), static_cast<NodeId>(v));
            }
        }
    }
    return Graph::from_edges(n, false, edges);
}

Graph barabasi_albert(std::size_t n, std::size_t m, std::uint64_t seed) {
    if (m < 1 || m >= n) throw ParameterError("barabasi_albert requires 1 <= m < n");
    Rng rng(seed);
    std::vector<Edge> edges;
    edges.reserve(m * (n - m));
    // Every edge endpoint appears once here, so a uniform pick is degree-proportional.
    std::vector<NodeId> endpoints;
    endpoints.reserve(2 * m * (n - m));
    for (NodeId leaf = 1; leaf <= m; ++leaf) {
        edges.emplace_back(0, leaf);
        endpoints.push_back(0);
        endpoints.push_back(leaf);
    }
    std::vector<NodeId> targets;
    targets.reserve(m);
    for (auto source = static_cast<NodeId>(m + 1); source < n; ++source) {
        targets.clear();
        while (targets.size() < m) {
            const NodeId t = endpoints[rng.below(endpoints.size())];
            if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
        }
        for (NodeId t : targets) {
            edges.emplace_back(t, source);
            endpoints.push_back(t);
            endpoints.push_back(source);
        }
    }
    return Graph::from_edges(n, false, edges);
}

Graph watts_strogatz(std::size_t n, std::size_t k, double beta, std::uint64_t seed) {
    check_probability(beta, "beta_rewire");
    if (k % 2 != 0) throw ParameterError("watts_strogatz requires an even k");
    if (k >= n && !(k == 0 && n == 0)) throw ParameterError("watts_strogatz requires k < n");
    std::vector<std::unordered_set<NodeId>> adj(n);
    const std::size_t half = k / 2;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t j = 1; j <= half; ++j) {
            const auto v = static_cast<NodeId>((u + j) % n);
            adj[u].insert(v);
            adj[v].insert(static_cast<NodeId>(u));
        }
    Rng rng(seed);
    for (std::size_t j = 1; j <= half; ++j) {
        for (std::size_t ui = 0; ui < n; ++ui) {
            const auto u = static_cast<NodeId>(ui);
            const auto v = static_cast<NodeId>((ui + j) % n);
            if (!(rng.uniform() < beta)) continue;
            if (adj[u].size() >= n - 1 || !adj[u].contains(v)) continue;
            NodeId w = 0;
            do {
                w = static_cast<NodeId>(rng.below(n));
            } while (w == u || adj[u].contains(w));
            adj[u].erase(v);
            adj[v].erase(u);
            adj[u].insert(w);
            adj[w].insert(u);
        }
    }
    std::vector<Edge> edges;
    edges.reserve(n * half);
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v : adj[u])
            if (u < v) edges.emplace_back(u, v);
    return Graph::from_edges(n, false, edges);
}

}  // namespace netdiff
