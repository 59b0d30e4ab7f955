#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "netdiff/model.hpp"
#include "netdiff/rng.hpp"
#include "netdiff/temporal.hpp"

namespace netdiff::dynamic {

// DynSI / DynSIS / DynSIR apply the static SI / SIS / SIR kernels to the
// topology of the current step: snapshot k-1 at step k in snapshot mode, or
// slice(T[k-1]) at step k in interaction mode. State carries over between
// steps; nodes without contacts keep their status and may still recover.

enum class Kind { SI, SIS, SIR };

/// One step on snapshot `k` (0-based). Throws SimulationError when k is out of range.
void dyn_step_snapshots(Kind kind, const SnapshotSequence& seq, std::size_t k, std::span<const Status> before,
                        std::span<Status> after, const Parameters& params, Rng& rng);

/// One step on the interactions alive at timestamp t.
void dyn_step_interactions(Kind kind, const TemporalGraph& g, Timestamp t, std::span<const Status> before,
                           std::span<Status> after, const Parameters& params, Rng& rng);

std::vector<std::unique_ptr<Model>> make_models();

}  // namespace netdiff::dynamic
