#pragma once

#include <cstddef>
#include <cstdint>

#include "netdiff/graph.hpp"

namespace netdiff {

/// G(n, p): every unordered pair present independently with probability p.
/// Uses geometric skipping, so the cost is proportional to the edge count.
Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed);

/// Preferential attachment from a star on m+1 nodes; each later node attaches
/// to m distinct existing nodes chosen proportionally to degree. m·(n−m) edges.
Graph barabasi_albert(std::size_t n, std::size_t m, std::uint64_t seed);

/// Ring lattice with k nearest neighbors (k even) whose edges are rewired with
/// probability beta to a uniform non-adjacent endpoint. n·k/2 edges.
Graph watts_strogatz(std::size_t n, std::size_t k, double beta, std::uint64_t seed);

}  // namespace netdiff
