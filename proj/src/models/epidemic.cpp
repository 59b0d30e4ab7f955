#include "netdiff/models/epidemic.hpp"

#include <algorithm>
#include <cmath>

#include "kernel_model.hpp"
#include "netdiff/error.hpp"

namespace netdiff::epidemic {

namespace {

constexpr Status S = 0;

// 1 - (1 - p)^k for k = 0..max_contacts.
class ContactProbability {
public:
    ContactProbability(double p, std::size_t max_contacts) : table_(max_contacts + 1, 0.0) {
        double miss = 1.0;
        for (std::size_t k = 1; k <= max_contacts; ++k) {
            miss *= 1.0 - p;
            table_[k] = 1.0 - miss;
        }
    }
    double operator()(std::size_t k) const { return table_[k]; }

private:
    std::vector<double> table_;
};

std::size_t count_in(const Graph& g, std::span<const Status> before, NodeId v, Status status) {
    std::size_t k = 0;
    for (NodeId w : g.in_neighbors(v)) k += before[w] == status;
    return k;
}

bool exceeds_threshold(const Graph& g, std::span<const Status> before, NodeId v, Status active, double threshold) {
    const auto deg = g.in_degree(v);
    if (deg == 0) return false;
    const auto k = count_in(g, before, v, active);
    return static_cast<double>(k) / static_cast<double>(deg) > threshold;
}

// S -(beta per contact with `infectious`)-> `target`; `recover_from` -(p_recover)-> `recover_to`.
// Extra compartment transition `mid_from` -(p_mid)-> `mid_to` for exposed models.
struct Compartments {
    Status infectious;
    Status exposed_target;
    double beta;
    int mid_from = -1;
    Status mid_to = 0;
    double p_mid = 0.0;
    int recover_from = -1;
    Status recover_to = 0;
    double p_recover = 0.0;
};

void step_compartmental(const Graph& g, std::span<const Status> before, std::span<Status> after,
                        const Compartments& c, Rng& rng) {
    const ContactProbability infect(c.beta, g.max_in_degree());
    const auto n = static_cast<NodeId>(before.size());
    for (NodeId v = 0; v < n; ++v) {
        const double u = rng.uniform();
        const Status s = before[v];
        if (s == S) {
            const auto k = count_in(g, before, v, c.infectious);
            if (k > 0 && u < infect(k)) after[v] = c.exposed_target;
        } else if (static_cast<int>(s) == c.mid_from) {
            if (u < c.p_mid) after[v] = c.mid_to;
        } else if (static_cast<int>(s) == c.recover_from) {
            if (u < c.p_recover) after[v] = c.recover_to;
        }
    }
}

}  // namespace

void step_si(const Graph& g, std::span<const Status> before, std::span<Status> after, double beta, Rng& rng) {
    step_compartmental(g, before, after, {.infectious = 1, .exposed_target = 1, .beta = beta}, rng);
}

void step_sir(const Graph& g, std::span<const Status> before, std::span<Status> after, double beta, double gamma,
              Rng& rng) {
    step_compartmental(g, before, after,
                       {.infectious = 1, .exposed_target = 1, .beta = beta, .recover_from = 1, .recover_to = 2,
                        .p_recover = gamma},
                       rng);
}

void step_sis(const Graph& g, std::span<const Status> before, std::span<Status> after, double beta, double lambda,
              Rng& rng) {
    step_compartmental(g, before, after,
                       {.infectious = 1, .exposed_target = 1, .beta = beta, .recover_from = 1, .recover_to = 0,
                        .p_recover = lambda},
                       rng);
}

void step_seis(const Graph& g, std::span<const Status> before, std::span<Status> after, double beta, double epsilon,
               double lambda, Rng& rng) {
    step_compartmental(g, before, after,
                       {.infectious = 2, .exposed_target = 1, .beta = beta, .mid_from = 1, .mid_to = 2,
                        .p_mid = epsilon, .recover_from = 2, .recover_to = 0, .p_recover = lambda},
                       rng);
}

void step_seir(const Graph& g, std::span<const Status> before, std::span<Status> after, double beta, double epsilon,
               double gamma, Rng& rng) {
    step_compartmental(g, before, after,
                       {.infectious = 2, .exposed_target = 1, .beta = beta, .mid_from = 1, .mid_to = 2,
                        .p_mid = epsilon, .recover_from = 2, .recover_to = 3, .p_recover = gamma},
                       rng);
}

void step_swir(const Graph& g, std::span<const Status> before, std::span<Status> after, double kappa, double mu,
               double nu, Rng& rng) {
    constexpr Status W = 1, I = 2, R = 3;
    const ContactProbability to_infected(kappa, g.max_in_degree());
    const ContactProbability to_any(std::min(1.0, kappa + mu), g.max_in_degree());
    const ContactProbability weakened_to_infected(nu, g.max_in_degree());
    const auto n = static_cast<NodeId>(before.size());
    for (NodeId v = 0; v < n; ++v) {
        const double u = rng.uniform();
        switch (before[v]) {
            case S: {
                const auto k = count_in(g, before, v, I);
                if (k == 0) break;
                if (u < to_infected(k)) after[v] = I;
                else if (u < to_any(k)) after[v] = W;
                break;
            }
            case W: {
                const auto k = count_in(g, before, v, I);
                if (k > 0 && u < weakened_to_infected(k)) after[v] = I;
                break;
            }
            case I: after[v] = R; break;
            default: break;
        }
    }
}

void step_threshold(const Graph& g, std::span<const Status> before, std::span<Status> after,
                    std::span<const double> thresholds) {
    constexpr Status I = 1;
    const auto n = static_cast<NodeId>(before.size());
    for (NodeId v = 0; v < n; ++v)
        if (before[v] == S && exceeds_threshold(g, before, v, I, thresholds[v])) after[v] = I;
}

void step_kertesz(const Graph& g, std::span<const Status> before, std::span<Status> after, double adopter_rate,
                  std::span<const double> thresholds, Rng& rng) {
    constexpr Status A = 1;
    const auto n = static_cast<NodeId>(before.size());
    for (NodeId v = 0; v < n; ++v) {
        const double u = rng.uniform();
        if (before[v] != S) continue;
        if (u < adopter_rate || exceeds_threshold(g, before, v, A, thresholds[v])) after[v] = A;
    }
}

void step_ic(const Graph& g, std::span<const Status> before, std::span<Status> after,
             std::span<const double> edge_probability, Rng& rng) {
    constexpr Status I = 1, R = 2;
    const auto n = static_cast<NodeId>(before.size());
    for (NodeId w = 0; w < n; ++w) {
        const double u = rng.uniform();
        if (before[w] == I) {
            after[w] = R;
            continue;
        }
        if (before[w] != S) continue;
        // Attempts by each newly active in-neighbor, ascending id; all independent.
        double miss = 1.0;
        bool exposed = false;
        const auto in = g.in_neighbors(w);
        const std::size_t base = g.in_arc_offset(w);
        for (std::size_t i = 0; i < in.size(); ++i) {
            if (before[in[i]] != I) continue;
            exposed = true;
            miss *= 1.0 - edge_probability[base + i];
        }
        if (exposed && u < 1.0 - miss) after[w] = I;
    }
}

void step_profile(const Graph& g, std::span<const Status> before, std::span<Status> after,
                  std::span<const double> profiles, Rng& rng) {
    constexpr Status I = 1;
    const auto n = static_cast<NodeId>(before.size());
    for (NodeId v = 0; v < n; ++v) {
        const double u = rng.uniform();
        if (before[v] != S) continue;
        const auto in = g.in_neighbors(v);
        const bool exposed = std::any_of(in.begin(), in.end(), [&](NodeId w) { return before[w] == I; });
        if (exposed && u < profiles[v]) after[v] = I;
    }
}

void step_profile_threshold(const Graph& g, std::span<const Status> before, std::span<Status> after,
                            std::span<const double> thresholds, std::span<const double> profiles, Rng& rng) {
    constexpr Status I = 1;
    const auto n = static_cast<NodeId>(before.size());
    for (NodeId v = 0; v < n; ++v) {
        const double u = rng.uniform();
        if (before[v] == S && exceeds_threshold(g, before, v, I, thresholds[v]) && u < profiles[v]) after[v] = I;
    }
}

std::vector<std::unique_ptr<Model>> make_models() {
    using detail::KernelModel;
    using detail::optional;
    using detail::required;
    using K = ParamKind;
    std::vector<std::unique_ptr<Model>> models;

    auto beta = [] { return required("beta", K::Probability, "infection probability per infected contact"); };

    models.push_back(std::make_unique<KernelModel>(
        ModelInfo{.name = "SI",
                  .description = "susceptible-infected",
                  .statuses = {"Susceptible", "Infected"},
                  .seed_status = 1,
                  .model_params = {beta()}},
        [](const StepContext& c, auto before, auto after, Rng& rng) {
            step_si(c.graph, before, after, c.params.scalar("beta"), rng);
        }));

    models.push_back(std::make_unique<KernelModel>(
        ModelInfo{.name = "SIR",
                  .description = "susceptible-infected-removed",
                  .statuses = {"Susceptible", "Infected", "Removed"},
                  .seed_status = 1,
                  .model_params = {beta(), required("gamma", K::Probability, "removal probability")}},
        [](const StepContext& c, auto before, auto after, Rng& rng) {
            step_sir(c.graph, before, after, c.params.scalar("beta"), c.params.scalar("gamma"), rng);
        }));

    models.push_back(std::make_unique<KernelModel>(
        ModelInfo{.name = "SIS",
                  .description = "susceptible-infected-susceptible",
                  .statuses = {"Susceptible", "Infected"},
                  .seed_status = 1,
                  .model_params = {beta(), required("lambda", K::Probability, "recovery-to-susceptible probability")}},
        [](const StepContext& c, auto before, auto after, Rng& rng) {
            step_sis(c.graph, before, after, c.params.scalar("beta"), c.params.scalar("lambda"), rng);
        }));

    models.push_back(std::make_unique<KernelModel>(
        ModelInfo{.name = "SEIS",
                  .description = "susceptible-exposed-infected-susceptible",
                  .statuses = {"Susceptible", "Exposed", "Infected"},
                  .seed_status = 2,
                  .model_params = {beta(), required("epsilon", K::Probability, "exposed-to-infected probability"),
                                   required("lambda", K::Probability, "recovery-to-susceptible probability")}},
        [](const StepContext& c, auto before, auto after, Rng& rng) {
            step_seis(c.graph, before, after, c.params.scalar("beta"), c.params.scalar("epsilon"),
                      c.params.scalar("lambda"), rng);
        }));

    models.push_back(std::make_unique<KernelModel>(
        ModelInfo{.name = "SEIR",
                  .description = "susceptible-exposed-infected-removed",
                  .statuses = {"Susceptible", "Exposed", "Infected", "Removed"},
                  .seed_status = 2,
                  .model_params = {beta(), required("epsilon", K::Probability, "exposed-to-infected probability"),
                                   required("gamma", K::Probability, "removal probability")}},
        [](const StepContext& c, auto before, auto after, Rng& rng) {
            step_seir(c.graph, before, after, c.params.scalar("beta"), c.params.scalar("epsilon"),
                      c.params.scalar("gamma"), rng);
        }));

    models.push_back(std::make_unique<KernelModel>(
        ModelInfo{.name = "SWIR",
                  .description = "susceptible-weakened-infected-recovered",
                  .statuses = {"Susceptible", "Weakened", "Infected", "Recovered"},
                  .seed_status = 2,
                  .model_params = {required("kappa", K::Probability, "S to I probability per infected contact"),
                                   required("mu", K::Probability, "S to W probability per infected contact"),
                                   required("nu", K::Probability, "W to I probability per infected contact")}},
        [](const StepContext& c, auto before, auto after, Rng& rng) {
            step_swir(c.graph, before, after, c.params.scalar("kappa"), c.params.scalar("mu"), c.params.scalar("nu"),
                      rng);
        },
        [](const Parameters& p, std::size_t) {
            if (p.scalar("kappa") + p.scalar("mu") > 1.0 + 1e-12)
                throw ConfigError("model.mu", "kappa + mu must not exceed 1");
        }));

    models.push_back(std::make_unique<KernelModel>(
        ModelInfo{.name = "Threshold",
                  .description = "deterministic fractional threshold",
                  .statuses = {"Susceptible", "Infected"},
                  .seed_status = 1,
                  .node_params = {optional("threshold", K::Probability, 0.1, "activation threshold")}},
        [](const StepContext& c, auto before, auto after, Rng&) {
            step_threshold(c.graph, before, after, c.params.node("threshold"));
        }));

    models.push_back(std::make_unique<KernelModel>(
        ModelInfo{.name = "KerteszThreshold",
                  .description = "threshold with blocked nodes and spontaneous adoption",
                  .statuses = {"Susceptible", "Adopting", "Blocked"},
                  .seed_status = 1,
                  .model_params = {optional("adopter_rate", K::Probability, 0.0, "spontaneous adoption probability"),
                                   optional("percentage_blocked", K::Probability, 0.1, "density of blocked nodes")},
                  .node_params = {optional("threshold", K::Probability, 0.1, "activation threshold")}},
        [](const StepContext& c, auto before, auto after, Rng& rng) {
            step_kertesz(c.graph, before, after, c.params.scalar("adopter_rate"), c.params.node("threshold"), rng);
        },
        KernelModel::ValidateFn{},
        [](std::span<Status> statuses, const Parameters& p, const Graph*, Rng& rng) {
            // Blocked nodes are drawn once, among the nodes still susceptible after seeding.
            const double r = p.scalar("percentage_blocked");
            if (r <= 0.0) return;
            std::vector<NodeId> pool;
            for (NodeId v = 0; v < statuses.size(); ++v)
                if (statuses[v] == S) pool.push_back(v);
            auto k = static_cast<std::size_t>(std::floor(r * static_cast<double>(statuses.size())));
            k = std::min(std::max<std::size_t>(k, 1), pool.size());
            for (std::size_t i = 0; i < k; ++i) {
                const std::size_t j = i + rng.below(pool.size() - i);
                std::swap(pool[i], pool[j]);
                statuses[pool[i]] = 2;
            }
        }));

    models.push_back(std::make_unique<KernelModel>(
        ModelInfo{.name = "IndependentCascades",
                  .description = "independent cascades; Infected = newly active, Removed = spent",
                  .statuses = {"Susceptible", "Infected", "Removed"},
                  .seed_status = 1,
                  .edge_params = {optional("probability", K::Probability, 0.1, "activation probability p_vw")}},
        [](const StepContext& c, auto before, auto after, Rng& rng) {
            step_ic(c.graph, before, after, c.params.edge("probability"), rng);
        }));

    models.push_back(std::make_unique<KernelModel>(
        ModelInfo{.name = "Profile",
                  .description = "profile-driven adoption on exposure",
                  .statuses = {"Susceptible", "Infected"},
                  .seed_status = 1,
                  .node_params = {optional("profile", K::Probability, 0.1, "adoption probability once exposed")}},
        [](const StepContext& c, auto before, auto after, Rng& rng) {
            step_profile(c.graph, before, after, c.params.node("profile"), rng);
        }));

    models.push_back(std::make_unique<KernelModel>(
        ModelInfo{.name = "ProfileThreshold",
                  .description = "profile-driven adoption gated by a threshold",
                  .statuses = {"Susceptible", "Infected"},
                  .seed_status = 1,
                  .node_params = {optional("threshold", K::Probability, 0.1, "activation threshold"),
                                  optional("profile", K::Probability, 0.1, "adoption probability")}},
        [](const StepContext& c, auto before, auto after, Rng& rng) {
            step_profile_threshold(c.graph, before, after, c.params.node("threshold"), c.params.node("profile"), rng);
        }));

    return models;
}

}  // namespace netdiff::epidemic
