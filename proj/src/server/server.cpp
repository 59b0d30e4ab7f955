#include "netdiff/server/server.hpp"

#include <httplib.h>

#include <algorithm>
#include <functional>

#include "netdiff/json_io.hpp"
#include "netdiff/registry.hpp"

namespace netdiff::server {

const std::vector<Resource>& resources() {
    static const std::vector<Resource> list = {
        {"POST", "/api/experiment", "Experiments", "Create an experiment and return its token"},
        {"GET", "/api/experiment", "Experiments", "Describe the experiment: network summary and attached models"},
        {"DELETE", "/api/experiment", "Experiments", "Destroy the experiment and purge its stored state"},
        {"POST", "/api/experiment/reset", "Experiments",
         "Return the selected models (default all) to iteration 0 with their initial statuses"},
        {"GET", "/api/exploratories", "Exploratories", "List the packaged scenarios"},
        {"POST", "/api/exploratories/{id}", "Exploratories",
         "Load a scenario's network and configured models into the experiment"},
        {"GET", "/api/resources", "Resources", "List every endpoint with its description"},
        {"PUT", "/api/networks", "Networks", "Generate a synthetic graph or upload a network"},
        {"DELETE", "/api/networks", "Networks", "Remove the network and every attached model"},
        {"GET", "/api/models", "Models", "List the available models with statuses and parameters"},
        {"PUT", "/api/models/{name}", "Models", "Attach a configured model; returns its id and seed"},
        {"DELETE", "/api/models", "Models", "Detach the selected models (default all)"},
        {"POST", "/api/iterators", "Iterators",
         "Advance the selected models (default all) by 'bunch' iterations and return their deltas"},
        {"GET", "/api/iterators", "Iterators", "Full trajectory document of one model"},
    };
    return list;
}

namespace {

struct HttpError {
    int status;
    std::string type;
};

void send_json(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& type, const std::string& message,
                const std::string& field = {}) {
    json err = {{"type", type}, {"message", message}};
    if (!field.empty()) err["field"] = field;
    send_json(res, status, {{"error", std::move(err)}});
}

json body_of(const httplib::Request& req) {
    if (req.body.empty()) return json::object();
    json doc = json::parse(req.body, nullptr, false);
    if (doc.is_discarded()) throw ParseError("request body is not valid JSON");
    if (!doc.is_object()) throw ParseError("request body must be a JSON object");
    return doc;
}

std::string token_of(const httplib::Request& req, const json& body) {
    if (req.has_param("token")) return req.get_param_value("token");
    if (body.contains("token") && body["token"].is_string()) return body["token"].get<std::string>();
    throw ConfigError("token", "missing experiment token");
}

// Model id filter from the body ("models": ["0", "1"]) or the query ("models=0,1").
std::optional<std::vector<std::string>> model_filter(const httplib::Request& req, const json& body) {
    std::vector<std::string> ids;
    if (body.contains("models")) {
        if (!body["models"].is_array()) throw ConfigError("models", "expected a list of model ids");
        for (const auto& id : body["models"]) ids.push_back(id.is_string() ? id.get<std::string>() : id.dump());
        return ids;
    }
    if (req.has_param("models")) {
        const std::string list = req.get_param_value("models");
        std::size_t start = 0;
        while (start <= list.size()) {
            const auto comma = std::min(list.find(',', start), list.size());
            if (comma > start) ids.push_back(list.substr(start, comma - start));
            start = comma + 1;
        }
        return ids;
    }
    return std::nullopt;
}

std::vector<AttachedModel*> select(Experiment& e, const std::optional<std::vector<std::string>>& filter) {
    std::vector<AttachedModel*> out;
    if (!filter) {
        for (auto& m : e.models) out.push_back(&m);
        return out;
    }
    for (const auto& id : *filter) out.push_back(&e.model(id));
    return out;
}

json model_summary(const AttachedModel& m) {
    json s = {{"id", m.id},
              {"model", m.sim->model().info().name},
              {"seed", m.sim->seed()},
              {"iterations", m.trajectory.size()}};
    if (auto left = m.sim->steps_remaining()) s["steps_remaining"] = *left;
    return s;
}

}  // namespace

struct Server::Impl {
    ServerOptions options;
    ExperimentStore store;
    std::vector<Exploratory> exploratories;
    httplib::Server http;

    explicit Impl(ServerOptions opts)
        : options(std::move(opts)), store(options.ttl, options.clock, options.snapshot_dir) {
        exploratories = builtin_exploratories();
        if (options.exploratory_dir)
            for (auto& e : load_exploratories(*options.exploratory_dir)) {
                auto same = [&](const Exploratory& x) { return x.id == e.id; };
                std::erase_if(exploratories, same);
                exploratories.push_back(std::move(e));
            }
        routes();
    }

    using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

    static Handler guarded(Handler h) {
        return [h = std::move(h)](const httplib::Request& req, httplib::Response& res) {
            try {
                h(req, res);
            } catch (const NotFoundError& e) {
                send_error(res, 404, "not_found", e.what());
            } catch (const ConflictError& e) {
                send_error(res, 409, "conflict", e.what());
            } catch (const NotImplementedError& e) {
                send_error(res, 501, "not_implemented", e.what());
            } catch (const ConfigError& e) {
                send_error(res, 400, "config", e.what(), e.field());
            } catch (const ParseError& e) {
                send_error(res, 400, "parse", e.what());
            } catch (const ParameterError& e) {
                send_error(res, 400, "parameter", e.what());
            } catch (const SimulationError& e) {
                send_error(res, 409, "simulation", e.what());
            } catch (const json::exception& e) {
                send_error(res, 400, "parse", e.what());
            } catch (const std::exception& e) {
                send_error(res, 500, "internal", e.what());
            }
        };
    }

    void routes() {
        http.Post("/api/experiment", guarded([this](const auto&, auto& res) {
            send_json(res, 200, {{"token", store.create()}, {"ttl_seconds", store.ttl().count()}});
        }));

        http.Get("/api/experiment", guarded([this](const auto& req, auto& res) {
            const json body = body_of(req);
            send_json(res, 200, store.with(token_of(req, body), [](Experiment& e) {
                json models = json::array();
                for (const auto& m : e.models) models.push_back(model_summary(m));
                return json{{"token", e.token},
                            {"network", e.network ? network_summary(*e.network) : json(nullptr)},
                            {"models", std::move(models)}};
            }));
        }));

        http.Delete("/api/experiment", guarded([this](const auto& req, auto& res) {
            const json body = body_of(req);
            const std::string token = token_of(req, body);
            store.destroy(token);
            send_json(res, 200, {{"destroyed", token}});
        }));

        http.Post("/api/experiment/reset", guarded([this](const auto& req, auto& res) {
            const json body = body_of(req);
            const auto filter = model_filter(req, body);
            send_json(res, 200, store.with(token_of(req, body), [&](Experiment& e) {
                json ids = json::array();
                for (AttachedModel* m : select(e, filter)) {
                    m->sim->set_initial_status();
                    m->trajectory.clear();
                    store.persist(e, *m);
                    ids.push_back(m->id);
                }
                return json{{"reset", std::move(ids)}};
            }));
        }));

        http.Put("/api/networks", guarded([this](const auto& req, auto& res) {
            json body = body_of(req);
            const std::string token = token_of(req, body);
            body.erase("token");
            send_json(res, 200, store.with(token, [&](Experiment& e) {
                if (e.network) throw ConflictError("the experiment already has a network; delete it first");
                e.network = network_from_json(body);
                return network_summary(*e.network);
            }));
        }));

        http.Delete("/api/networks", guarded([this](const auto& req, auto& res) {
            const json body = body_of(req);
            send_json(res, 200, store.with(token_of(req, body), [](Experiment& e) {
                if (!e.network) throw NotFoundError("the experiment has no network");
                e.network.reset();
                e.models.clear();
                return json{{"network", nullptr}};
            }));
        }));

        http.Get("/api/models", guarded([](const auto&, auto& res) {
            json models = json::array();
            for (const auto& name : model_names()) models.push_back(model_info_to_json(get_model(name).info()));
            send_json(res, 200, {{"models", std::move(models)}});
        }));

        http.Put(R"(/api/models/([A-Za-z0-9_]+))", guarded([this](const auto& req, auto& res) {
            const json body = body_of(req);
            const Model* model = find_model(req.matches[1].str());
            if (!model) throw NotFoundError("unknown model '" + req.matches[1].str() + "'");
            send_json(res, 200, store.with(token_of(req, body), [&](Experiment& e) {
                if (!e.network) throw ConflictError("provision a network before attaching models");
                AttachedModel m = attach(*model, *e.network, body.value("config", json::object()));
                m.id = std::to_string(e.next_model_id++);
                json out = {{"id", m.id}, {"model", model->info().name}, {"seed", m.sim->seed()}};
                e.models.push_back(std::move(m));
                return out;
            }));
        }));

        http.Delete("/api/models", guarded([this](const auto& req, auto& res) {
            const json body = body_of(req);
            const auto filter = model_filter(req, body);
            send_json(res, 200, store.with(token_of(req, body), [&](Experiment& e) {
                json ids = json::array();
                for (AttachedModel* m : select(e, filter)) ids.push_back(m->id);
                std::erase_if(e.models, [&](const AttachedModel& m) {
                    return std::find(ids.begin(), ids.end(), m.id) != ids.end();
                });
                return json{{"detached", std::move(ids)}};
            }));
        }));

        http.Post("/api/iterators", guarded([this](const auto& req, auto& res) {
            const json body = body_of(req);
            const auto filter = model_filter(req, body);
            std::size_t bunch = 1;
            if (body.contains("bunch")) {
                if (!body["bunch"].is_number_integer() || body["bunch"].template get<std::int64_t>() <= 0 || body["bunch"].template get<std::size_t>() == 0)
                    throw ParameterError("bunch must be a positive integer");
                bunch = body["bunch"].template get<std::size_t>();
            }
            send_json(res, 200, store.with(token_of(req, body), [&](Experiment& e) {
                if (!e.network) throw ConflictError("the experiment has no network");
                if (e.models.empty()) throw ConflictError("the experiment has no models");
                const auto selected = select(e, filter);
                for (AttachedModel* m : selected) {
                    const std::size_t updates = bunch - (m->trajectory.empty() ? 1 : 0);
                    if (auto left = m->sim->steps_remaining(); left && updates > *left)
                        throw SimulationError("model " + m->id + " has only " + std::to_string(*left) +
                                              " topology steps left");
                }
                json out = json::object();
                for (AttachedModel* m : selected) {
                    json deltas = json::array();
                    for (std::size_t i = 0; i < bunch; ++i) {
                        m->trajectory.push_back(m->sim->iteration());
                        deltas.push_back(delta_to_json(m->trajectory.back()));
                    }
                    store.persist(e, *m);
                    out[m->id] = {{"model", m->sim->model().info().name}, {"iterations", std::move(deltas)}};
                }
                return json{{"models", std::move(out)}};
            }));
        }));

        http.Get("/api/iterators", guarded([this](const auto& req, auto& res) {
            const json body = body_of(req);
            if (!req.has_param("model")) throw ConfigError("model", "missing model id");
            const std::string id = req.get_param_value("model");
            send_json(res, 200, store.with(token_of(req, body), [&](Experiment& e) {
                const AttachedModel& m = e.model(id);
                return trajectory_to_json(*m.sim, m.trajectory);
            }));
        }));

        http.Get("/api/exploratories", guarded([this](const auto&, auto& res) {
            json list = json::array();
            for (const auto& x : exploratories) {
                json models = json::array();
                for (const auto& m : x.models) models.push_back(m.model);
                list.push_back({{"id", x.id}, {"description", x.description}, {"models", std::move(models)}});
            }
            send_json(res, 200, {{"exploratories", std::move(list)}});
        }));

        http.Post(R"(/api/exploratories/([A-Za-z0-9_.\-]+))", guarded([this](const auto& req, auto& res) {
            const json body = body_of(req);
            const std::string id = req.matches[1].str();
            auto it = std::find_if(exploratories.begin(), exploratories.end(),
                                   [&](const Exploratory& x) { return x.id == id; });
            if (it == exploratories.end()) throw NotFoundError("unknown exploratory '" + id + "'");
            send_json(res, 200, store.with(token_of(req, body), [&](Experiment& e) {
                if (e.network) throw ConflictError("the experiment already has a network; delete it first");
                // Build everything first so a failure leaves the experiment untouched.
                Network network = network_from_json(it->network);
                std::vector<AttachedModel> models;
                for (const auto& entry : it->models) models.push_back(attach(get_model(entry.model), network, entry.config));
                e.network = std::move(network);
                json ids = json::array();
                for (auto& m : models) {
                    m.id = std::to_string(e.next_model_id++);
                    ids.push_back({{"id", m.id}, {"model", m.sim->model().info().name}, {"seed", m.sim->seed()}});
                    e.models.push_back(std::move(m));
                }
                return json{{"exploratory", id}, {"network", network_summary(*e.network)}, {"models", std::move(ids)}};
            }));
        }));

        http.Get("/api/resources", guarded([](const auto&, auto& res) {
            json list = json::array();
            for (const auto& r : resources())
                list.push_back(
                    {{"method", r.method}, {"path", r.path}, {"category", r.category}, {"description", r.description}});
            send_json(res, 200, {{"resources", std::move(list)}});
        }));

        http.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr) {
            send_error(res, 500, "internal", "unhandled server error");
        });
        http.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
            if (res.status == 404 && res.body.empty())
                send_error(res, 404, "not_found", "no route for " + req.method + " " + req.path);
        });
    }

    AttachedModel attach(const Model& model, const Network& network, const json& config_doc) {
        ModelConfig cfg = config_from_json(config_doc, NodeNames(network));
        if (!cfg.seed) cfg.seed = store.draw_seed();
        AttachedModel m;
        m.sim = std::make_unique<Simulation>(model, network, std::move(cfg));
        m.sim->set_initial_status();
        return m;
    }
};

Server::Server(ServerOptions options) : impl_(std::make_unique<Impl>(std::move(options))) {}
Server::~Server() = default;

int Server::bind(const std::string& host, int port) {
    if (port == 0) return impl_->http.bind_to_any_port(host);
    return impl_->http.bind_to_port(host, port) ? port : -1;
}

bool Server::listen_after_bind() { return impl_->http.listen_after_bind(); }
void Server::wait_until_ready() const { impl_->http.wait_until_ready(); }
void Server::stop() { impl_->http.stop(); }
ExperimentStore& Server::store() { return impl_->store; }
const std::vector<Exploratory>& Server::exploratories() const { return impl_->exploratories; }

}  // namespace netdiff::server
