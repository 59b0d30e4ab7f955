#pragma once

#include <memory>
#include <span>
#include <vector>

#include "netdiff/graph.hpp"
#include "netdiff/model.hpp"
#include "netdiff/rng.hpp"

namespace netdiff::epidemic {

// Synchronous step kernels. Each reads `before`, writes `after` (a copy of
// `before` on entry) and, except for the deterministic threshold rule, draws
// exactly one uniform per node in ascending id order. A susceptible node with
// k infectious in-neighbors is infected when its draw falls below
// 1 - (1 - beta)^k, i.e. one independent trial per contact.
//
// Status codes follow the model vocabularies:
//   SI, SIS, Threshold, Profile, ProfileThreshold: S=0 I=1
//   SIR, IndependentCascades:                      S=0 I=1 R=2
//   SEIS: S=0 E=1 I=2      SEIR: S=0 E=1 I=2 R=3
//   SWIR: S=0 W=1 I=2 R=3  KerteszThreshold: S=0 A=1 B=2

void step_si(const Graph& g, std::span<const Status> before, std::span<Status> after, double beta, Rng& rng);
void step_sir(const Graph& g, std::span<const Status> before, std::span<Status> after, double beta, double gamma,
              Rng& rng);
void step_sis(const Graph& g, std::span<const Status> before, std::span<Status> after, double beta, double lambda,
              Rng& rng);
void step_seis(const Graph& g, std::span<const Status> before, std::span<Status> after, double beta, double epsilon,
               double lambda, Rng& rng);
void step_seir(const Graph& g, std::span<const Status> before, std::span<Status> after, double beta, double epsilon,
               double gamma, Rng& rng);
/// Per contact with an infected node a susceptible draws I with kappa, W with
/// mu (one partitioned draw); a weakened node turns I with nu per contact;
/// every node infected at the start of the step is recovered at its end.
void step_swir(const Graph& g, std::span<const Status> before, std::span<Status> after, double kappa, double mu,
               double nu, Rng& rng);
/// Deterministic: S turns I iff the infected share of its in-neighbors strictly
/// exceeds its threshold. Nodes without in-neighbors never activate.
void step_threshold(const Graph& g, std::span<const Status> before, std::span<Status> after,
                    std::span<const double> thresholds);
/// Blocked nodes never change; a susceptible adopts spontaneously with
/// `adopter_rate`, otherwise by the strict threshold rule.
void step_kertesz(const Graph& g, std::span<const Status> before, std::span<Status> after, double adopter_rate,
                  std::span<const double> thresholds, Rng& rng);
/// Newly active nodes (I) get one chance per inactive out-neighbor with the
/// per-edge probability, then become spent (R).
void step_ic(const Graph& g, std::span<const Status> before, std::span<Status> after,
             std::span<const double> edge_probability, Rng& rng);
/// A susceptible with at least one infected in-neighbor adopts with its profile probability.
void step_profile(const Graph& g, std::span<const Status> before, std::span<Status> after,
                  std::span<const double> profiles, Rng& rng);
/// As step_profile, but the coin is only flipped when the threshold condition holds.
void step_profile_threshold(const Graph& g, std::span<const Status> before, std::span<Status> after,
                            std::span<const double> thresholds, std::span<const double> profiles, Rng& rng);

/// Registry instances of the static epidemic models.
std::vector<std::unique_ptr<Model>> make_models();

}  // namespace netdiff::epidemic
