#include "netdiff/models/dynamic.hpp"

#include <string>

#include "kernel_model.hpp"
#include "netdiff/error.hpp"
#include "netdiff/models/epidemic.hpp"

namespace netdiff::dynamic {

namespace {

void step_on(Kind kind, const Graph& g, std::span<const Status> before, std::span<Status> after,
             const Parameters& p, Rng& rng) {
    switch (kind) {
        case Kind::SI: epidemic::step_si(g, before, after, p.scalar("beta"), rng); break;
        case Kind::SIS: epidemic::step_sis(g, before, after, p.scalar("beta"), p.scalar("lambda"), rng); break;
        case Kind::SIR: epidemic::step_sir(g, before, after, p.scalar("beta"), p.scalar("gamma"), rng); break;
    }
}

}  // namespace

void dyn_step_snapshots(Kind kind, const SnapshotSequence& seq, std::size_t k, std::span<const Status> before,
                        std::span<Status> after, const Parameters& params, Rng& rng) {
    if (k >= seq.size())
        throw SimulationError("snapshot index " + std::to_string(k) + " out of range (" + std::to_string(seq.size()) +
                              " snapshots)");
    step_on(kind, seq[k].graph, before, after, params, rng);
}

void dyn_step_interactions(Kind kind, const TemporalGraph& g, Timestamp t, std::span<const Status> before,
                           std::span<Status> after, const Parameters& params, Rng& rng) {
    step_on(kind, g.slice(t), before, after, params, rng);
}

std::vector<std::unique_ptr<Model>> make_models() {
    using detail::KernelModel;
    using detail::required;
    using K = ParamKind;
    std::vector<std::unique_ptr<Model>> models;
    auto beta = [] { return required("beta", K::Probability, "infection probability per infected contact"); };

    auto add = [&](Kind kind, std::string name, std::string description, std::vector<std::string> statuses,
                   std::vector<ParamSpec> params) {
        models.push_back(std::make_unique<KernelModel>(
            ModelInfo{.name = std::move(name),
                      .description = std::move(description),
                      .statuses = std::move(statuses),
                      .seed_status = 1,
                      .model_params = std::move(params),
                      .topology = TopologyKind::Dynamic},
            [kind](const StepContext& c, auto before, auto after, Rng& rng) {
                step_on(kind, c.graph, before, after, c.params, rng);
            }));
    };
    add(Kind::SI, "DynSI", "SI over a dynamic topology", {"Susceptible", "Infected"}, {beta()});
    add(Kind::SIS, "DynSIS", "SIS over a dynamic topology", {"Susceptible", "Infected"},
        {beta(), required("lambda", K::Probability, "recovery-to-susceptible probability")});
    add(Kind::SIR, "DynSIR", "SIR over a dynamic topology", {"Susceptible", "Infected", "Removed"},
        {beta(), required("gamma", K::Probability, "removal probability")});
    return models;
}

}  // namespace netdiff::dynamic
