#include "cli.hpp"

#include "gssl/dynamic_sbm.hpp"
#include "gssl/experiments.hpp"
#include "gssl/generators.hpp"
#include "gssl/io.hpp"
#include "gssl/metrics.hpp"
#include "gssl/operators.hpp"
#include "gssl/power_solver.hpp"
#include "gssl/random.hpp"
#include "gssl/sampling_solver.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;

namespace gssl::cli {

namespace {

struct SolverFlags {
    double sigma = 0.5;
    double mu = 1.0;
    double epsilon = 0.1;
    std::string schedule = "dec:100";
    std::string policy = "mcmc";
    std::string init = "labels";
    std::uint64_t seed = 1;
    bool compat_printed_update = false;

    void attach(CLI::App& app, const std::string& init_flag = "--init") {
        app.add_option("--sigma", sigma, "Exponent in B = D^-sigma A D^(sigma-1)");
        app.add_option("--mu", mu, "Regularization weight (alpha = 2/(2+mu))");
        app.add_option("--epsilon", epsilon, "Teleport probability of the sampling chain");
        app.add_option("--schedule", schedule, "Step sizes: dec:<period> or const:<eta>");
        app.add_option("--policy", policy, "Node selection for sampling")
            ->check(CLI::IsMember({"mcmc", "round-robin"}));
        app.add_option(init_flag, init, "Initial features")->check(CLI::IsMember({"labels", "zeros"}));
        app.add_option("--seed", seed, "Random seed");
        app.add_flag("--compat-printed-update", compat_printed_update,
                     "Use the alternative update constants (H F_j and alpha Y)");
    }

    SolverConfig config() const {
        SolverConfig c;
        c.sigma = sigma;
        c.mu = mu;
        c.epsilon = epsilon;
        c.schedule = StepSchedule::parse(schedule);
        c.policy = policy == "round-robin" ? SelectionPolicy::round_robin() : SelectionPolicy::mcmc();
        c.initial = init == "zeros" ? InitialFeatures::zeros : InitialFeatures::labels;
        c.update = compat_printed_update ? UpdateForm::printed : UpdateForm::consistent;
        c.seed = seed;
        c.validate();
        return c;
    }
};

struct InputFlags {
    std::string graph;
    std::string labels;
    std::string truth;
    bool unit_weights = false;

    void attach(CLI::App& app, bool truth_required) {
        app.add_option("--graph", graph, "Edge list file")->required();
        app.add_option("--labels", labels, "Labeled nodes file")->required();
        auto* t = app.add_option("--truth", truth, "Reference classes for error counts");
        if (truth_required) {
            t->required();
        }
        app.add_flag("--unit-weights", unit_weights, "Set every edge weight to 1");
    }
};

struct Inputs {
    SimilarityGraph graph;
    LabelAssignment labels;
    std::optional<LabelAssignment> truth;
};

LabelAssignment with_classes(const LabelAssignment& src, std::size_t k) {
    LabelAssignment out(k);
    for (const auto& [node, cls] : src.entries()) {
        out.assign(node, cls);
    }
    return out;
}

Inputs load_inputs(const InputFlags& flags) {
    Inputs in{load_edge_list(flags.graph, EdgeListOptions{flags.unit_weights}),
              load_labels(flags.labels), std::nullopt};
    std::size_t k = in.labels.num_classes();
    if (!flags.truth.empty()) {
        in.truth = load_labels(flags.truth);
        k = std::max(k, in.truth->num_classes());
        in.truth = with_classes(*in.truth, k);
    }
    in.labels = with_classes(in.labels, k);
    for (const auto& [node, cls] : in.labels.entries()) {
        if (!in.graph.contains(node)) {
            throw ConfigError("labeled node " + std::to_string(node) + " is not in the graph");
        }
    }
    return in;
}

fs::path prepare_out_dir(const std::string& dir) {
    fs::path p(dir);
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec) {
        throw IoError("cannot create output directory '" + dir + "': " + ec.message());
    }
    return p;
}

std::uint64_t parse_count(const std::string& text, const char* field) {
    const double v = parse_double(text, field);
    if (!(v >= 0.0) || v != std::floor(v) || v > 9.0e18) {
        throw ConfigError(std::string(field) + " must be a non-negative integer");
    }
    return static_cast<std::uint64_t>(v);
}

std::string percent(const ErrorCount& e) {
    std::ostringstream s;
    s << e.count << '/' << e.denominator << " (" << format_number(e.percentage) << "%)";
    return s.str();
}

struct SolveOutcome {
    FeatureMatrix features;
    TrajectoryRecord trajectory;
    std::size_t iterations = 0;
    bool converged = false;
};

SolveOutcome solve_once(const Inputs& in, const std::string& method, const SolverConfig& config,
                        std::size_t iterations, double tol, unsigned threads) {
    SolveOutcome out;
    if (method == "power") {
        const auto op = build_operator(in.graph, config.sigma);
        const FeatureMatrix y = indicator_matrix(in.labels, in.graph);
        FeatureMatrix f0 = config.initial == InitialFeatures::labels
                               ? y
                               : FeatureMatrix(y.rows(), y.cols());
        PowerObserver observer;
        if (in.truth) {
            observer = [&](std::size_t t, const FeatureMatrix& f) {
                out.trajectory.append(t, error_against(in.graph, classify(f), *in.truth, in.labels),
                                      in.graph.node_count(), static_cast<double>(t));
            };
        }
        auto result = power_solve(std::move(f0), op, y, config.alpha(),
                                  PowerSolveOptions{tol, iterations, threads}, observer);
        out.features = std::move(result.features);
        out.iterations = result.report.iterations;
        out.converged = result.report.converged;
    } else {
        auto run = run_sampling(in.graph, in.labels, config, iterations,
                                in.truth ? &*in.truth : nullptr);
        out.features = std::move(run.features);
        out.trajectory = std::move(run.trajectory);
        out.iterations = iterations;
    }
    return out;
}

int cmd_solve(const InputFlags& input, const SolverFlags& solver, const std::string& method,
              std::size_t iterations, double tol, unsigned threads, bool axis_column,
              const std::string& out_dir, std::ostream& out) {
    const SolverConfig config = solver.config();
    const Inputs in = load_inputs(input);
    const fs::path dir = prepare_out_dir(out_dir);
    const SolveOutcome result = solve_once(in, method, config, iterations, tol, threads);

    std::ostringstream features;
    write_features_csv(features, in.graph.node_ids(), result.features);
    std::ostringstream trajectory;
    write_trajectory_csv(trajectory, result.trajectory, axis_column);
    write_file(dir / "features.csv", features.str());
    write_file(dir / "trajectory.csv", trajectory.str());

    out << "method=" << method << " nodes=" << in.graph.node_count()
        << " classes=" << in.labels.num_classes() << " iterations=" << result.iterations;
    if (method == "power") {
        out << " converged=" << (result.converged ? "yes" : "no");
    }
    if (in.truth) {
        out << " error="
            << percent(error_against(in.graph, classify(result.features), *in.truth, in.labels));
    }
    out << '\n';
    return 0;
}

int cmd_sweep(const InputFlags& input, const SolverFlags& solver, const std::string& method,
              const std::vector<double>& sigmas, const std::vector<double>& mus, std::size_t repeats,
              std::size_t iterations, double tol, unsigned threads, const std::string& out_dir,
              std::ostream& out) {
    if (repeats == 0) {
        throw ConfigError("repeats must be at least 1");
    }
    const Inputs in = load_inputs(input);
    const fs::path dir = prepare_out_dir(out_dir);
    const SolverConfig base = solver.config();
    for (double mu : mus) {
        alpha_from_mu(mu);
    }

    const std::size_t cells = sigmas.size() * mus.size();
    const std::size_t tasks = cells * repeats;
    std::vector<double> errors(tasks, 0.0);
    std::atomic<std::size_t> next{0};
    std::vector<std::string> failures(tasks);
    auto worker = [&] {
        for (std::size_t task = next++; task < tasks; task = next++) {
            const std::size_t cell = task / repeats;
            SolverConfig config = base;
            config.sigma = sigmas[cell / mus.size()];
            config.mu = mus[cell % mus.size()];
            config.seed = derive_seed(base.seed, task);
            try {
                const auto r = solve_once(in, method, config, iterations, tol, 1);
                errors[task] = static_cast<double>(
                    error_against(in.graph, classify(r.features), *in.truth, in.labels).count);
            } catch (const std::exception& e) {
                failures[task] = e.what();
            }
        }
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(tasks)));
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 1; w < workers; ++w) {
            pool.emplace_back(worker);
        }
        worker();
    }
    for (const auto& f : failures) {
        if (!f.empty()) {
            throw Error(f);
        }
    }

    std::ostringstream csv;
    csv << "sigma,mu,avg_error\n";
    for (std::size_t cell = 0; cell < cells; ++cell) {
        double sum = 0.0;
        for (std::size_t r = 0; r < repeats; ++r) {
            sum += errors[cell * repeats + r];
        }
        csv << format_number(sigmas[cell / mus.size()]) << ',' << format_number(mus[cell % mus.size()])
            << ',' << format_number(sum / static_cast<double>(repeats)) << '\n';
    }
    write_file(dir / "sweep.csv", csv.str());
    out << "sweep cells=" << cells << " repeats=" << repeats << " method=" << method << '\n';
    return 0;
}

void write_graph_files(const fs::path& dir, const SimilarityGraph& graph, const LabelAssignment& truth,
                       const LabelAssignment& labels) {
    std::ostringstream edges, truth_text, label_text;
    write_edge_list(edges, graph);
    write_labels(truth_text, truth);
    write_labels(label_text, labels);
    write_file(dir / "graph.edges", edges.str());
    write_file(dir / "truth.labels", truth_text.str());
    write_file(dir / "labels.labels", label_text.str());
}

struct GenerateFlags {
    std::string kind;
    std::size_t n = 500;
    double radius = 1.0;
    std::vector<std::size_t> sizes{100, 100};
    double p_in = 0.2;
    double p_out = 0.01;
    std::size_t per_class = 2;
    bool drop_isolated = false;
    std::uint64_t seed = 1;
    std::string out_dir = ".";
};

int cmd_generate(const GenerateFlags& flags, std::ostream& out) {
    const fs::path dir = prepare_out_dir(flags.out_dir);
    if (flags.kind == "gaussian") {
        GaussianMixtureSpec spec;
        spec.n = flags.n;
        spec.radius = flags.radius;
        spec.seed = flags.seed;
        auto g = generate_gaussian_mixture(spec);
        if (flags.drop_isolated) {
            drop_isolated_nodes(g.graph, g.truth);
            g.connected = is_connected(g.graph);
        }
        const auto labels = pick_labeled_nodes(g.graph, g.truth, flags.per_class);
        write_graph_files(dir, g.graph, g.truth, labels);
        std::ostringstream pos;
        pos << "node_id,x,y,class\n";
        for (NodeId id : g.graph.node_ids()) {
            pos << id << ',' << format_number(g.positions[id].x) << ',' << format_number(g.positions[id].y)
                << ',' << *g.truth.class_of(id) << '\n';
        }
        write_file(dir / "positions.csv", pos.str());
        out << "gaussian nodes=" << g.graph.node_count() << " edges=" << g.graph.edge_count()
            << " connected=" << (g.connected ? "yes" : "no")
            << " isolated=" << isolated_nodes(g.graph).size() << '\n';
    } else {
        const auto g = generate_sbm(flags.sizes, flags.p_in, flags.p_out, flags.seed);
        const auto labels = pick_labeled_nodes(g.graph, g.truth, flags.per_class);
        write_graph_files(dir, g.graph, g.truth, labels);
        out << "sbm nodes=" << g.graph.node_count() << " edges=" << g.graph.edge_count()
            << " connected=" << (is_connected(g.graph) ? "yes" : "no") << '\n';
    }
    return 0;
}

struct SimulateFlags {
    std::string kind;
    std::size_t cap = 1000;
    double lambda = 5e-5;
    double mu_dep = 1e-7;
    std::size_t init = 500;
    std::string steps = "2e6";
    std::size_t classes = 3;
    double p_in = 0.1;
    double p_out = 0.005;
    std::string density = "mcd";
    std::size_t labeled_per_class = 2;
    bool permanent_labels = false;
    std::size_t iteration_length = 0;
    std::string out_dir = ".";
};

int cmd_simulate(const SimulateFlags& flags, const SolverFlags& solver, std::ostream& out) {
    DynamicSbmSpec spec;
    spec.classes = flags.classes;
    spec.p_in = flags.p_in;
    spec.p_out = flags.p_out;
    spec.apply_density(parse_density(flags.density));
    spec.arrival_rate = flags.lambda;
    spec.departure_rate = flags.mu_dep;
    spec.capacity = flags.cap;
    spec.initial_size = flags.init;
    spec.labeled_per_class = flags.labeled_per_class;
    spec.permanent_labels = flags.permanent_labels;
    spec.seed = solver.seed;
    spec.validate();
    SolverConfig config = solver.config();
    config.seed = derive_seed(solver.seed, 4);
    const std::uint64_t duration = parse_count(flags.steps, "steps");

    const fs::path dir = prepare_out_dir(flags.out_dir);
    const auto result = simulate_dynamic_sbm(spec, config, duration, flags.iteration_length);

    std::ostringstream trajectory, events;
    write_trajectory_csv(trajectory, result.trajectory);
    write_event_log(events, result.events);
    write_file(dir / "trajectory.csv", trajectory.str());
    write_file(dir / "events.log", events.str());

    const double half = static_cast<double>(duration) / 2.0;
    out << "dsbm steps=" << duration << " events=" << result.events.size()
        << " mean_size_second_half="
        << format_number(result.time_averaged_size(half, static_cast<double>(duration)));
    if (!result.trajectory.empty()) {
        out << " final_size=" << result.trajectory.back().n_nodes
            << " final_error_pct=" << format_number(result.trajectory.back().error_pct);
    }
    out << '\n';
    return 0;
}

struct TrackFlags {
    std::size_t n = 500;
    std::size_t pretrain = 200;
    std::size_t post = 20;
    std::string policy = "mcmc";
    ClassIndex new_class = 1;
    double radius = 1.0;
    std::size_t per_class = 2;
    std::string out_dir = ".";
};

int cmd_track(const TrackFlags& flags, const SolverFlags& solver, bool schedule_given,
              std::ostream& out) {
    TrackingSpec spec;
    spec.mixture.n = flags.n;
    spec.mixture.radius = flags.radius;
    spec.mixture.seed = solver.seed;
    spec.labeled_per_class = flags.per_class;
    spec.pretrain_iterations = flags.pretrain;
    spec.post_iterations = flags.post;
    spec.new_node_class = flags.new_class;
    spec.post_policy = flags.policy == "focus" ? SelectionKind::new_node_focus : SelectionKind::mcmc;
    SolverFlags s = solver;
    if (!schedule_given) {
        s.schedule = "dec:1000";
    }
    spec.solver = s.config();
    spec.solver.seed = derive_seed(solver.seed, 5);

    const fs::path dir = prepare_out_dir(flags.out_dir);
    const auto result = run_tracking_experiment(spec);

    std::ostringstream csv;
    csv << "iteration";
    for (std::size_t c = 0; c < result.supported.size(); ++c) {
        csv << ",f_" << c;
    }
    csv << '\n';
    for (std::size_t it = 0; it < result.history.size(); ++it) {
        csv << it + 1;
        for (double v : result.history[it]) {
            csv << ',' << format_number(v);
        }
        csv << '\n';
    }
    write_file(dir / "new_node.csv", csv.str());
    out << "track new_node=" << result.new_node << " neighbors=" << result.neighbor_count
        << " planted=" << result.planted << " predicted=" << result.predicted
        << " correct=" << (result.planted == result.predicted ? "yes" : "no") << '\n';
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Graph-based semi-supervised classification: power iteration and sampling solvers"};
    app.require_subcommand(1);

    InputFlags input;
    SolverFlags solver;
    std::string method = "power";
    std::size_t iterations = 500;
    double tol = 1e-12;
    unsigned threads = 1;
    bool axis_column = false;
    std::string out_dir = ".";

    auto* solve = app.add_subcommand("solve", "Classify nodes of a graph from a few labels");
    input.attach(*solve, false);
    solver.attach(*solve);
    solve->add_option("--method", method)->check(CLI::IsMember({"power", "sampling"}));
    solve->add_option("--iters", iterations, "Iterations (N sampling steps each)");
    solve->add_option("--tol", tol, "Power iteration stopping tolerance (weighted norm)");
    solve->add_option("--threads", threads, "Worker threads for the matrix-vector product");
    solve->add_flag("--axis-column", axis_column, "Append iter_per_avg_degree to the trajectory");
    solve->add_option("--out-dir", out_dir);

    InputFlags sweep_input;
    SolverFlags sweep_solver;
    std::vector<double> sigmas{0.0, 0.5, 1.0};
    std::vector<double> mus{0.5, 1.0, 2.0};
    std::size_t repeats = 3;
    auto* sweep = app.add_subcommand("sweep", "Average error over a sigma x mu grid");
    sweep_input.attach(*sweep, true);
    sweep_solver.attach(*sweep);
    sweep->add_option("--method", method)->check(CLI::IsMember({"power", "sampling"}));
    sweep->add_option("--sigmas", sigmas)->delimiter(',');
    sweep->add_option("--mus", mus)->delimiter(',');
    sweep->add_option("--repeats", repeats);
    sweep->add_option("--iters", iterations);
    sweep->add_option("--tol", tol);
    sweep->add_option("--threads", threads, "Runs executed in parallel");
    sweep->add_option("--out-dir", out_dir);

    GenerateFlags gen;
    auto* generate = app.add_subcommand("generate", "Write a synthetic graph");
    generate->add_option("kind", gen.kind)->required()->check(CLI::IsMember({"gaussian", "sbm"}));
    generate->add_option("--n", gen.n);
    generate->add_option("--radius", gen.radius);
    generate->add_option("--sizes", gen.sizes)->delimiter(',');
    generate->add_option("--p-in", gen.p_in);
    generate->add_option("--p-out", gen.p_out);
    generate->add_option("--per-class", gen.per_class, "Labeled nodes per class (top degree)");
    generate->add_flag("--drop-isolated", gen.drop_isolated);
    generate->add_option("--seed", gen.seed);
    generate->add_option("--out-dir", gen.out_dir);

    SimulateFlags sim;
    SolverFlags sim_solver;
    sim_solver.schedule = "const:0.001";
    auto* simulate = app.add_subcommand("simulate", "Dynamic stochastic block model co-simulation");
    simulate->add_option("kind", sim.kind)->required()->check(CLI::IsMember({"dsbm"}));
    sim_solver.attach(*simulate, "--init-features");
    simulate->add_option("--cap", sim.cap);
    simulate->add_option("--lambda", sim.lambda, "Arrival rate per step");
    simulate->add_option("--mu-dep", sim.mu_dep, "Departure rate per node per step");
    simulate->add_option("--init", sim.init, "Initial number of nodes");
    simulate->add_option("--steps", sim.steps);
    simulate->add_option("--classes", sim.classes);
    simulate->add_option("--p-in", sim.p_in);
    simulate->add_option("--p-out", sim.p_out);
    simulate->add_option("--density", sim.density)->check(CLI::IsMember({"hcd", "mcd", "lcd"}));
    simulate->add_option("--labeled-per-class", sim.labeled_per_class);
    simulate->add_flag("--permanent-labels", sim.permanent_labels);
    simulate->add_option("--iteration-length", sim.iteration_length, "Steps per iteration (default cap)");
    simulate->add_option("--out-dir", sim.out_dir);

    TrackFlags track_flags;
    SolverFlags track_solver;
    auto* track = app.add_subcommand("track", "New-node tracking on a Gaussian mixture graph");
    track_solver.attach(*track);
    track->add_option("--n", track_flags.n);
    track->add_option("--pretrain", track_flags.pretrain);
    track->add_option("--post", track_flags.post);
    track->add_option("--post-policy", track_flags.policy)->check(CLI::IsMember({"mcmc", "focus"}));
    track->add_option("--class", track_flags.new_class, "Planted class of the new node");
    track->add_option("--radius", track_flags.radius);
    track->add_option("--per-class", track_flags.per_class);
    track->add_option("--out-dir", track_flags.out_dir);

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (solve->parsed()) {
            return cmd_solve(input, solver, method, iterations, tol, threads, axis_column, out_dir, out);
        }
        if (sweep->parsed()) {
            return cmd_sweep(sweep_input, sweep_solver, method, sigmas, mus, repeats, iterations, tol,
                             threads, out_dir, out);
        }
        if (generate->parsed()) {
            return cmd_generate(gen, out);
        }
        if (simulate->parsed()) {
            return cmd_simulate(sim, sim_solver, out);
        }
        if (track->parsed()) {
            return cmd_track(track_flags, track_solver, track->count("--schedule") > 0, out);
        }
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const ZeroDegreeError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const GraphError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace gssl::cli
