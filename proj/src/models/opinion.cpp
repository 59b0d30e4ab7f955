#include "netdiff/models/opinion.hpp"

#include <algorithm>
#include <unordered_set>

#include "kernel_model.hpp"
#include "netdiff/error.hpp"

namespace netdiff::opinion {

std::vector<std::size_t> sample_distinct(std::size_t n, std::size_t k, Rng& rng) {
    std::vector<std::size_t> out;
    out.reserve(k);
    auto taken = [&out](std::size_t x) { return std::find(out.begin(), out.end(), x) != out.end(); };
    for (std::size_t j = n - k; j < n; ++j) {
        const auto t = static_cast<std::size_t>(rng.below(j + 1));
        out.push_back(taken(t) ? j : t);
    }
    return out;
}

void voter_update(const Graph& g, std::span<Status> state, Rng& rng) {
    if (state.empty()) return;
    const auto u = static_cast<NodeId>(rng.below(state.size()));
    const auto in = g.in_neighbors(u);
    if (in.empty()) return;
    state[u] = state[in[rng.below(in.size())]];
}

void qvoter_update(const Graph& g, std::span<Status> state, std::size_t q, Rng& rng) {
    if (state.empty()) return;
    const auto u = static_cast<NodeId>(rng.below(state.size()));
    const auto in = g.in_neighbors(u);
    if (in.empty()) return;
    const auto panel = sample_distinct(in.size(), std::min(q, in.size()), rng);
    const Status first = state[in[panel.front()]];
    for (std::size_t i : panel)
        if (state[in[i]] != first) return;
    state[u] = first;
}

void sznajd_update(const Graph& g, std::span<Status> state, Rng& rng) {
    if (g.arc_count() == 0) return;
    const std::size_t arc = rng.below(g.arc_count());
    const NodeId u = g.arc_source(arc);
    const NodeId v = g.arc_target(arc);
    const Status s = state[u];
    if (state[v] != s) return;
    for (NodeId w : g.neighbors(u)) state[w] = s;
    for (NodeId w : g.neighbors(v)) state[w] = s;
    if (g.directed()) {
        for (NodeId w : g.in_neighbors(u)) state[w] = s;
        for (NodeId w : g.in_neighbors(v)) state[w] = s;
    }
}

void majority_update(std::span<Status> state, std::size_t r, Rng& rng) {
    if (r == 0 || r > state.size()) throw ParameterError("majority group size must be in [1, |V|]");
    const auto group = sample_distinct(state.size(), r, rng);
    std::size_t plus = 0;
    for (std::size_t v : group) plus += state[v] == kPlus;
    const Status winner = 2 * plus >= r ? kPlus : kMinus;
    for (std::size_t v : group) state[v] = winner;
}

CognitiveState::CognitiveState(double risk_perception, int risk_sensitivity, double tendency_to_inform,
                               double institutional_trust)
    : o_(risk_perception), r_(risk_sensitivity), beta_(tendency_to_inform), t_(institutional_trust) {
    auto unit = [](double x) { return x >= 0.0 && x <= 1.0; };
    if (!unit(o_)) throw ParameterError("risk perception must lie in [0, 1]");
    if (r_ < -1 || r_ > 1) throw ParameterError("risk sensitivity must be -1, 0 or 1");
    if (!unit(beta_)) throw ParameterError("tendency to inform must lie in [0, 1]");
    if (!unit(t_)) throw ParameterError("institutional trust must lie in [0, 1]");
}

namespace {

std::size_t repetitions(const StepContext& c, std::size_t n) {
    return c.params.scalar("sweep") != 0.0 ? n : 1;
}

ParamSpec sweep_param() {
    return detail::optional("sweep", ParamKind::Flag, 0.0, "1: one iteration is |V| micro-updates");
}

ModelInfo opinion_info(std::string name, std::string description, std::vector<ParamSpec> params) {
    params.push_back(sweep_param());
    return ModelInfo{.name = std::move(name),
                     .description = std::move(description),
                     .statuses = {"Minus", "Plus"},
                     .seed_status = kPlus,
                     .model_params = std::move(params),
                     .time_unit = TimeUnit::MicroUpdate};
}

}  // namespace

std::vector<std::unique_ptr<Model>> make_models() {
    using detail::KernelModel;
    using detail::required;
    std::vector<std::unique_ptr<Model>> models;

    models.push_back(std::make_unique<KernelModel>(
        opinion_info("Voter", "copy the opinion of a random neighbor", {}),
        [](const StepContext& c, auto, std::span<Status> after, Rng& rng) {
            for (std::size_t i = repetitions(c, after.size()); i > 0; --i) voter_update(c.graph, after, rng);
        }));

    models.push_back(std::make_unique<KernelModel>(
        opinion_info("Sznajd", "an agreeing pair imposes its opinion on its neighborhood", {}),
        [](const StepContext& c, auto, std::span<Status> after, Rng& rng) {
            for (std::size_t i = repetitions(c, after.size()); i > 0; --i) sznajd_update(c.graph, after, rng);
        }));

    models.push_back(std::make_unique<KernelModel>(
        opinion_info("QVoter", "a unanimous panel of q neighbors convinces the target",
                     {required("q", ParamKind::PositiveInteger, "panel size"),
                      detail::optional("epsilon", ParamKind::Probability, 0.0, "nonconformity; only 0 is supported")}),
        [](const StepContext& c, auto, std::span<Status> after, Rng& rng) {
            const auto q = static_cast<std::size_t>(c.params.scalar("q"));
            for (std::size_t i = repetitions(c, after.size()); i > 0; --i) qvoter_update(c.graph, after, q, rng);
        },
        [](const Parameters& p, std::size_t) {
            if (p.scalar("epsilon") != 0.0) throw ConfigError("model.epsilon", "only epsilon = 0 is supported");
        }));

    models.push_back(std::make_unique<KernelModel>(
        opinion_info("MajorityRule", "a random group of r agents adopts its majority opinion",
                     {required("r", ParamKind::PositiveInteger, "group size")}),
        [](const StepContext& c, auto, std::span<Status> after, Rng& rng) {
            const auto r = static_cast<std::size_t>(c.params.scalar("r"));
            for (std::size_t i = repetitions(c, after.size()); i > 0; --i) majority_update(after, r, rng);
        },
        [](const Parameters& p, std::size_t n) {
            if (p.scalar("r") > static_cast<double>(n))
                throw ConfigError("model.r", "group size exceeds the node count");
        }));

    models.push_back(std::make_unique<KernelModel>(
        ModelInfo{.name = "CognitiveOpinionDynamics",
                  .description = "cognitive opinion dynamics; state space only, dynamics not provided",
                  .statuses = {"Agent"}},
        [](const StepContext&, auto, auto, Rng&) {
            throw NotImplementedError("CognitiveOpinionDynamics dynamics are not implemented");
        },
        [](const Parameters&, std::size_t) {
            throw NotImplementedError(
                "CognitiveOpinionDynamics dynamics are not implemented; see Vilone et al. (2016) for the update "
                "rules");
        }));

    return models;
}

}  // namespace netdiff::opinion
