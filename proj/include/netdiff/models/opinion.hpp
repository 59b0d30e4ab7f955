#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "netdiff/graph.hpp"
#include "netdiff/model.hpp"
#include "netdiff/rng.hpp"

namespace netdiff::opinion {

// Opinions are the status codes Minus=0 (-1) and Plus=1 (+1). Each kernel
// performs one asynchronous micro-update on `state` in place.
inline constexpr Status kMinus = 0;
inline constexpr Status kPlus = 1;

/// Uniform node u; if u has in-neighbors it copies one chosen uniformly.
/// Draws: below(n), then below(deg) when deg > 0.
void voter_update(const Graph& g, std::span<Status> state, Rng& rng);

/// Uniform target u; a panel of min(q, deg) distinct in-neighbors sampled with
/// Floyd's algorithm; u adopts the panel opinion when it is unanimous. With
/// q = 1 the draw sequence is exactly the voter's.
void qvoter_update(const Graph& g, std::span<Status> state, std::size_t q, Rng& rng);

/// Uniform arc (u, v); if the pair agrees every other neighbor of u or v adopts their opinion.
void sznajd_update(const Graph& g, std::span<Status> state, Rng& rng);

/// r distinct agents drawn from all nodes (topology ignored) adopt the group
/// majority; ties go to Plus.
void majority_update(std::span<Status> state, std::size_t r, Rng& rng);

/// Floyd's algorithm: k distinct values from [0, n), in insertion order. k <= n.
std::vector<std::size_t> sample_distinct(std::size_t n, std::size_t k, Rng& rng);

/// Per-agent state of the cognitive opinion dynamics model. Only the state
/// space is provided; constructing one validates every range.
class CognitiveState {
public:
    CognitiveState(double risk_perception, int risk_sensitivity, double tendency_to_inform, double institutional_trust);

    double risk_perception() const noexcept { return o_; }
    int risk_sensitivity() const noexcept { return r_; }
    double tendency_to_inform() const noexcept { return beta_; }
    double institutional_trust() const noexcept { return t_; }
    double peer_trust() const noexcept { return 1.0 - t_; }

private:
    double o_;
    int r_;
    double beta_;
    double t_;
};

std::vector<std::unique_ptr<Model>> make_models();

}  // namespace netdiff::opinion
