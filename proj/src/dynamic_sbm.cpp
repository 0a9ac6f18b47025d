#include "gssl/dynamic_sbm.hpp"

#include "gssl/io.hpp"

#include <cmath>
#include <functional>
#include <ostream>
#include <queue>

namespace gssl {

namespace {

const char* via_name(ReplacementOutcome::Via via) {
    switch (via) {
        case ReplacementOutcome::Via::neighbor:
            return "neighbor";
        case ReplacementOutcome::Via::highest_degree:
            return "highest-degree";
        case ReplacementOutcome::Via::none:
            break;
    }
    return "none";
}

struct PendingDeparture {
    double time;
    NodeId node;
    bool operator>(const PendingDeparture& other) const {
        return time != other.time ? time > other.time : node > other.node;
    }
};

using DepartureQueue =
    std::priority_queue<PendingDeparture, std::vector<PendingDeparture>, std::greater<>>;

}  // namespace

void DynamicSbmSpec::validate() const {
    if (classes == 0) {
        throw ConfigError("dsbm: classes must be positive");
    }
    if (!class_probabilities.empty() && class_probabilities.size() != classes) {
        throw ConfigError("dsbm: class_probabilities needs one entry per class");
    }
    if (!(p_in >= 0.0 && p_in <= 1.0) || !(p_out >= 0.0 && p_out <= 1.0)) {
        throw ConfigError("dsbm: p_in and p_out must lie in [0, 1]");
    }
    if (!(p_in > p_out)) {
        throw ConfigError("dsbm: p_in must exceed p_out");
    }
    if (!(arrival_rate > 0.0) || !std::isfinite(arrival_rate)) {
        throw ConfigError("dsbm: lambda (arrival rate) must be positive");
    }
    if (!(departure_rate > 0.0) || !std::isfinite(departure_rate)) {
        throw ConfigError("dsbm: mu-dep (departure rate) must be positive");
    }
    if (capacity < 1) {
        throw ConfigError("dsbm: cap must be at least 1");
    }
    if (initial_size > capacity) {
        throw ConfigError("dsbm: init exceeds cap");
    }
}

std::vector<double> DynamicSbmSpec::probabilities() const {
    if (!class_probabilities.empty()) {
        return class_probabilities;
    }
    return std::vector<double>(classes, 1.0 / static_cast<double>(classes));
}

void DynamicSbmSpec::apply_density(DensityPreset preset) {
    switch (preset) {
        case DensityPreset::hcd:
            p_in *= 2.0;
            break;
        case DensityPreset::mcd:
            break;
        case DensityPreset::lcd:
            p_in *= 0.5;
            break;
    }
}

DensityPreset parse_density(std::string_view name) {
    if (name == "hcd") {
        return DensityPreset::hcd;
    }
    if (name == "mcd") {
        return DensityPreset::mcd;
    }
    if (name == "lcd") {
        return DensityPreset::lcd;
    }
    throw ConfigError("density: expected hcd, mcd or lcd, got '" + std::string(name) + "'");
}

void write_event_log(std::ostream& out, const std::vector<SimulationEvent>& events) {
    for (const auto& e : events) {
        out << format_number(e.time) << ' ';
        switch (e.kind) {
            case EventKind::arrival:
                out << "arrival ";
                if (e.node) {
                    out << "node=" << *e.node;
                } else {
                    out << "blocked";
                }
                out << " class=" << e.cls;
                break;
            case EventKind::departure:
                out << "departure node=" << e.node.value_or(0) << " class=" << e.cls;
                break;
            case EventKind::label_replacement:
                out << "label-replacement class=" << e.cls << " old=" << e.node.value_or(0) << " new=";
                if (e.replacement) {
                    out << *e.replacement;
                } else {
                    out << "none";
                }
                out << " via=" << via_name(e.via);
                break;
        }
        out << '\n';
    }
}

double DynamicSbmResult::time_averaged_size(double from, double to) const {
    if (!(to > from) || size_path.empty()) {
        return 0.0;
    }
    double area = 0.0;
    for (std::size_t k = 0; k < size_path.size(); ++k) {
        const double start = std::max(from, size_path[k].first);
        const double end = std::min(to, k + 1 < size_path.size() ? size_path[k + 1].first : to);
        if (end > start) {
            area += static_cast<double>(size_path[k].second) * (end - start);
        }
    }
    return area / (to - from);
}

DynamicSbmResult simulate_dynamic_sbm(const DynamicSbmSpec& spec, const SolverConfig& solver_config,
                                      std::uint64_t duration, std::size_t iteration_length) {
    spec.validate();
    solver_config.validate();
    if (iteration_length == 0) {
        iteration_length = spec.capacity;
    }
    const auto probabilities = spec.probabilities();

    Rng graph_rng(derive_seed(spec.seed, 1));
    Rng event_rng(derive_seed(spec.seed, 2));
    Rng label_rng(derive_seed(spec.seed, 3));

    SimilarityGraph graph(spec.capacity);
    LabelAssignment truth(spec.classes);
    DepartureQueue departures;
    DynamicSbmResult result;
    result.duration = static_cast<double>(duration);

    auto wire = [&](NodeId id, ClassIndex cls) {
        for (NodeId other : graph.node_ids()) {
            if (other == id) {
                continue;
            }
            const double p = truth.class_of(other) == cls ? spec.p_in : spec.p_out;
            if (graph_rng.bernoulli(p)) {
                graph.add_edge(other, id, 1.0);
            }
        }
    };

    for (std::size_t i = 0; i < spec.initial_size; ++i) {
        const NodeId id = graph.add_node();
        const ClassIndex cls = sample_class(probabilities, graph_rng);
        truth.assign(id, cls);
        wire(id, cls);
    }
    LabelAssignment labels = spec.initial_size > 0
                                 ? pick_labeled_nodes(graph, truth, spec.labeled_per_class)
                                 : LabelAssignment(spec.classes);
    for (NodeId id : graph.node_ids()) {
        if (!(spec.permanent_labels && labels.contains(id))) {
            departures.push({event_rng.exponential(spec.departure_rate), id});
        }
    }
    double next_arrival = event_rng.exponential(spec.arrival_rate);
    result.size_path.emplace_back(0.0, graph.node_count());

    std::optional<SamplingSolver> solver;
    if (!graph.empty()) {
        solver.emplace(graph, labels, solver_config, IsolatedNodes::allow);
    }

    auto process_arrival = [&](double time) {
        const ClassIndex cls = sample_class(probabilities, graph_rng);
        SimulationEvent ev{time, EventKind::arrival, std::nullopt, cls, std::nullopt,
                           ReplacementOutcome::Via::none};
        if (graph.node_count() < spec.capacity) {
            const NodeId id = graph.add_node();
            truth.assign(id, cls);
            wire(id, cls);
            departures.push({time + event_rng.exponential(spec.departure_rate), id});
            ev.node = id;
            result.size_path.emplace_back(time, graph.node_count());
        }
        result.events.push_back(ev);
    };

    auto process_departure = [&](const PendingDeparture& d) {
        const ClassIndex cls = *truth.class_of(d.node);
        if (labels.contains(d.node)) {
            const auto outcome = replace_labeled_node(graph, labels, truth, d.node, label_rng);
            if (!outcome.node) {
                ++result.label_count_changes;
            }
            result.events.push_back(SimulationEvent{d.time, EventKind::label_replacement, d.node, cls,
                                                    outcome.node, outcome.via});
        }
        graph.remove_node(d.node);
        truth.remove(d.node);
        result.events.push_back(SimulationEvent{d.time, EventKind::departure, d.node, cls,
                                                std::nullopt, ReplacementOutcome::Via::none});
        result.size_path.emplace_back(d.time, graph.node_count());
    };

    for (std::uint64_t step = 0; step < duration; ++step) {
        const auto now = static_cast<double>(step);
        bool changed = false;
        while (true) {
            const bool departure_due = !departures.empty() && departures.top().time <= now;
            const bool arrival_due = next_arrival <= now;
            if (!departure_due && !arrival_due) {
                break;
            }
            if (arrival_due && (!departure_due || next_arrival < departures.top().time)) {
                process_arrival(next_arrival);
                next_arrival += event_rng.exponential(spec.arrival_rate);
            } else {
                const PendingDeparture d = departures.top();
                departures.pop();
                process_departure(d);
            }
            changed = true;
        }
        if (changed && !graph.empty()) {
            if (solver) {
                solver->sync(graph, labels);
            } else {
                solver.emplace(graph, labels, solver_config, IsolatedNodes::allow);
            }
        }
        if (solver && !graph.empty()) {
            solver->step();
        }
        if ((step + 1) % iteration_length == 0) {
            const std::size_t iteration = (step + 1) / iteration_length;
            ErrorCount err;
            if (solver && !graph.empty()) {
                err = error_against(graph, classify(solver->features()), truth, labels);
            }
            result.trajectory.append(iteration, err, graph.node_count(), static_cast<double>(iteration));
        }
    }
    return result;
}

}  // namespace gssl
