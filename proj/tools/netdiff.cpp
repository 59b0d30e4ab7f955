#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "netdiff/analytics.hpp"
#include "netdiff/generators.hpp"
#include "netdiff/json_io.hpp"
#include "netdiff/registry.hpp"
#include "netdiff/server/server.hpp"

namespace fs = std::filesystem;
using namespace netdiff;

namespace {

constexpr int kConfigExit = 2;
constexpr int kIoExit = 3;
constexpr int kSimulationExit = 4;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text)) throw IoError("cannot write " + path.string());
}

struct ModelRun {
    std::string stem;  // artifact prefix
    const Model* model = nullptr;
    ModelConfig config;
};

struct RunSpec {
    Network network;
    std::vector<ModelRun> models;
    std::optional<std::size_t> iterations;
    std::size_t runs = 1;
    std::uint64_t seed = 0;
    double lower_pct = 25.0;
    double upper_pct = 75.0;
    fs::path out_dir;
    std::vector<std::string> formats{"json", "csv", "svg"};
};

bool wants(const RunSpec& spec, const std::string& format) {
    return std::find(spec.formats.begin(), spec.formats.end(), format) != spec.formats.end();
}

template <class T>
T field(const json& doc, const char* key, const std::string& path, T fallback) {
    if (!doc.contains(key)) return fallback;
    try {
        return doc[key].get<T>();
    } catch (const json::exception&) {
        throw ConfigError(path + "." + key, "wrong type");
    }
}

// Everything is validated, including every model configuration, before any simulation runs.
RunSpec parse_spec(const fs::path& file) {
    const json doc = json::parse(read_file(file), nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) throw ParseError(file.string() + ": not a JSON object");
    for (const auto& [key, value] : doc.items())
        if (key != "network" && key != "models" && key != "execution" && key != "output")
            throw ConfigError(key, "unknown field");

    RunSpec spec;
    if (!doc.contains("network")) throw ConfigError("network", "missing");
    const fs::path base = file.parent_path();
    spec.network = network_from_json(doc["network"], &base);

    const json exec = doc.value("execution", json::object());
    if (exec.contains("iterations")) spec.iterations = field<std::size_t>(exec, "iterations", "execution", 0);
    if (spec.iterations && *spec.iterations == 0) throw ConfigError("execution.iterations", "must be at least 1");
    spec.runs = field<std::size_t>(exec, "runs", "execution", 1);
    if (spec.runs == 0) throw ConfigError("execution.runs", "must be at least 1");
    spec.seed = field<std::uint64_t>(exec, "seed", "execution", 0);
    if (exec.contains("percentiles")) {
        auto p = field<std::vector<double>>(exec, "percentiles", "execution", {});
        if (p.size() != 2) throw ConfigError("execution.percentiles", "expected [lower, upper]");
        spec.lower_pct = p[0];
        spec.upper_pct = p[1];
    }
    const auto mode = exec.contains("execution_mode")
                          ? std::optional<std::string>(field<std::string>(exec, "execution_mode", "execution", ""))
                          : std::nullopt;

    const json out = doc.value("output", json::object());
    spec.out_dir = base / field<std::string>(out, "directory", "output", "out");
    if (out.contains("formats")) spec.formats = field<std::vector<std::string>>(out, "formats", "output", {});

    if (!doc.contains("models") || !doc["models"].is_array() || doc["models"].empty())
        throw ConfigError("models", "expected a non-empty list");
    std::map<std::string, int> seen;
    const NodeNames names(spec.network);
    for (std::size_t i = 0; i < doc["models"].size(); ++i) {
        const json& entry = doc["models"][i];
        const std::string path = "models[" + std::to_string(i) + "]";
        if (!entry.is_object() || !entry.contains("model") || !entry["model"].is_string())
            throw ConfigError(path + ".model", "missing model name");
        ModelRun run;
        try {
            run.model = &get_model(entry["model"].get<std::string>());
            run.config = config_from_json(entry.value("config", json::object()), names);
            if (!run.config.execution_mode && mode && run.model->info().topology == TopologyKind::Dynamic)
                run.config.execution_mode = mode;
            if (!run.config.seed) run.config.seed = spec.seed;
            Simulation probe(*run.model, spec.network, run.config);
        } catch (const ConfigError& e) {
            throw ConfigError(path + "." + e.field(), e.what());
        }
        const auto& name = run.model->info().name;
        const int n = seen[name]++;
        run.stem = n == 0 ? name : name + "_" + std::to_string(n);
        spec.models.push_back(std::move(run));
    }
    return spec;
}

std::size_t iterations_for(const RunSpec& spec, const Simulation& sim) {
    if (spec.iterations) return *spec.iterations;
    if (auto left = sim.steps_remaining()) return *left + 1;
    throw ConfigError("execution.iterations", "required for static networks");
}

int run_command(const fs::path& file, std::size_t jobs) {
    RunSpec spec = parse_spec(file);
    fs::create_directories(spec.out_dir);
    for (const auto& m : spec.models) {
        const auto& statuses = m.model->info().statuses;
        std::vector<Trajectory> runs;
        std::vector<std::unique_ptr<Simulation>> sims;
        if (spec.runs == 1) {
            auto sim = std::make_unique<Simulation>(*m.model, spec.network, m.config);
            sim->set_initial_status();
            runs.push_back(sim->iteration_bunch(iterations_for(spec, *sim)));
            sims.push_back(std::move(sim));
        } else {
            Simulation probe(*m.model, spec.network, m.config);
            MultiRunOptions opts;
            opts.executions = spec.runs;
            opts.iterations = iterations_for(spec, probe);
            opts.seed = *m.config.seed;
            opts.jobs = jobs;
            runs = multi_runs(*m.model, spec.network, m.config, opts);
            for (std::size_t k = 0; k < spec.runs; ++k) {
                auto sim = std::make_unique<Simulation>(*m.model, spec.network, m.config);
                sim->set_initial_status(derive_seed(opts.seed, k));
                sims.push_back(std::move(sim));
            }
        }
        if (wants(spec, "json"))
            for (std::size_t k = 0; k < runs.size(); ++k)
                write_file(spec.out_dir / (m.stem + "-" + std::to_string(k) + ".trajectory.json"),
                           trajectory_to_json(*sims[k], runs[k]).dump() + "\n");
        const Series tr = trend(runs.front(), statuses, m.stem);
        const Series pr = prevalence(runs.front(), statuses, m.stem);
        if (wants(spec, "csv")) {
            write_file(spec.out_dir / (m.stem + ".trend.csv"), to_csv(tr));
            write_file(spec.out_dir / (m.stem + ".prevalence.csv"), to_csv(pr));
        }
        if (wants(spec, "svg")) {
            write_file(spec.out_dir / (m.stem + ".trend.svg"), to_svg(tr));
            write_file(spec.out_dir / (m.stem + ".prevalence.svg"), to_svg(pr));
        }
        if (spec.runs > 1) {
            const BandedSeries band = aggregate_runs(runs, statuses, spec.lower_pct, spec.upper_pct, m.stem);
            if (wants(spec, "csv")) write_file(spec.out_dir / (m.stem + ".banded.csv"), to_csv(band));
            if (wants(spec, "json")) write_file(spec.out_dir / (m.stem + ".banded.json"), to_json(band).dump() + "\n");
            if (wants(spec, "svg")) write_file(spec.out_dir / (m.stem + ".banded.svg"), to_svg(band));
        }
        std::cout << m.stem << ": " << spec.runs << " run(s), " << runs.front().size() << " iterations -> "
                  << spec.out_dir.string() << "\n";
    }
    return 0;
}

// Runtimes of the reference implementation for 25 SIR iterations on BA graphs.
double reference_seconds(std::size_t n) {
    switch (n) {
        case 1000: return 0.060;
        case 10000: return 0.655;
        case 100000: return 7.554;
        case 1000000: return 90.443;
        default: return -1.0;
    }
}

int bench_command(const std::vector<std::size_t>& sizes, std::uint64_t seed, std::size_t reps,
                  std::size_t iterations, std::size_t m) {
    const Model& sir = get_model("SIR");
    ModelConfig cfg;
    cfg.add_model_parameter("beta", 0.001).add_model_parameter("gamma", 0.01).add_model_parameter(kPercentageInfected,
                                                                                                  0.05);
    std::printf("# SIR beta=0.001 gamma=0.01 percentage_infected=0.05 iterations=%zu ba_m=%zu seed=%llu reps=%zu\n",
                iterations, m, static_cast<unsigned long long>(seed), reps);
    std::printf("nodes,edges,median_s,min_s,max_s,reference_s\n");
    for (std::size_t n : sizes) {
        auto graph = std::make_shared<const Graph>(barabasi_albert(n, m, seed));
        std::vector<double> times;
        for (std::size_t r = 0; r < reps; ++r) {
            const auto start = std::chrono::steady_clock::now();
            Simulation sim(sir, graph, cfg);
            sim.set_initial_status(derive_seed(seed, r));
            sim.iteration();  // initial status dump
            for (std::size_t i = 0; i < iterations; ++i) sim.iteration();
            times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
        }
        std::sort(times.begin(), times.end());
        const double ref = reference_seconds(n);
        std::printf("%zu,%zu,%.4f,%.4f,%.4f,", n, graph->edge_count(), times[times.size() / 2], times.front(),
                    times.back());
        if (ref > 0) std::printf("%.3f", ref);
        std::printf("\n");
    }
    return 0;
}

server::Server* g_server = nullptr;

int serve_command(const std::string& listen, long ttl, const std::string& exploratories, const std::string& snapshots) {
    const auto colon = listen.rfind(':');
    if (colon == std::string::npos) throw ConfigError("listen", "expected host:port");
    const std::string host = listen.substr(0, colon);
    const int port = std::stoi(listen.substr(colon + 1));
    server::ServerOptions opts;
    opts.ttl = std::chrono::seconds(ttl);
    if (!exploratories.empty()) opts.exploratory_dir = exploratories;
    if (!snapshots.empty()) opts.snapshot_dir = snapshots;
    server::Server srv(std::move(opts));
    const int bound = srv.bind(host, port);
    if (bound < 0) throw IoError("cannot listen on " + listen);
    g_server = &srv;
    std::signal(SIGINT, [](int) { if (g_server) g_server->stop(); });
    std::signal(SIGTERM, [](int) { if (g_server) g_server->stop(); });
    std::cout << "listening on " << host << ":" << bound << std::endl;
    srv.listen_after_bind();
    g_server = nullptr;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete-time diffusion simulation on static and dynamic networks"};
    app.require_subcommand(1);

    std::string spec_file;
    std::size_t jobs = 0;
    auto* run = app.add_subcommand("run", "Run the experiments described by a JSON spec");
    run->add_option("spec", spec_file, "Run specification")->required();
    run->add_option("--jobs", jobs, "Parallel runs (0: all cores)");

    std::vector<std::size_t> sizes{1000, 10000, 100000};
    std::uint64_t seed = 1;
    std::size_t reps = 5, iterations = 25, m = 3;
    auto* bench = app.add_subcommand("bench", "Time SIR iterations on Barabasi-Albert graphs");
    bench->add_option("--sizes", sizes, "Node counts")->delimiter(',');
    bench->add_option("--seed", seed, "Generator and simulation seed");
    bench->add_option("--reps", reps, "Timed repetitions per size")->check(CLI::PositiveNumber);
    bench->add_option("--iterations", iterations, "Update steps per repetition");
    bench->add_option("--m", m, "Edges per new node");

    std::string listen = "127.0.0.1:8080", exploratories, snapshots;
    long ttl = 3600;
    auto* serve = app.add_subcommand("serve", "Start the REST experiment server");
    serve->add_option("--listen", listen, "host:port")->envname("NETDIFF_LISTEN");
    serve->add_option("--ttl", ttl, "Experiment expiry in seconds")->envname("NETDIFF_TTL");
    serve->add_option("--exploratories", exploratories, "Directory of scenario files")
        ->envname("NETDIFF_EXPLORATORIES");
    serve->add_option("--snapshots", snapshots, "Directory for trajectory snapshots")->envname("NETDIFF_SNAPSHOTS");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return run_command(spec_file, jobs);
        if (*bench) return bench_command(sizes, seed, reps, iterations, m);
        if (*serve) return serve_command(listen, ttl, exploratories, snapshots);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigExit;
    } catch (const ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigExit;
    } catch (const ParameterError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigExit;
    } catch (const NotImplementedError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigExit;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kIoExit;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kIoExit;
    } catch (const std::exception& e) {
        std::cerr << "simulation error: " << e.what() << "\n";
        return kSimulationExit;
    }
    return 0;
}
