#include "gssl/experiments.hpp"

#include "gssl/metrics.hpp"

#include <algorithm>

namespace gssl {

TrackingResult run_tracking_experiment(const TrackingSpec& spec) {
    if (spec.new_node_class >= spec.mixture.class_probabilities.size()) {
        throw ConfigError("track: new node class out of range");
    }
    auto mixture = generate_gaussian_mixture(spec.mixture);
    SimilarityGraph& graph = mixture.graph;
    LabelAssignment& truth = mixture.truth;
    drop_isolated_nodes(graph, truth);
    const LabelAssignment labels = pick_labeled_nodes(graph, truth, spec.labeled_per_class);

    SolverConfig pretrain = spec.solver;
    pretrain.policy = SelectionPolicy::mcmc();
    SamplingSolver solver(graph, labels, pretrain);
    solver.run(static_cast<std::uint64_t>(spec.pretrain_iterations) * graph.node_count());

    // Draw the newcomer until it lands within reach of at least one node.
    Rng placement(derive_seed(spec.mixture.seed, 0x7e57));
    const double r2 = spec.mixture.radius * spec.mixture.radius;
    std::vector<NodeId> neighbors;
    for (int attempt = 0; attempt < 10000 && neighbors.empty(); ++attempt) {
        const Point p = sample_point(spec.mixture, spec.new_node_class, placement);
        for (NodeId id : graph.node_ids()) {
            const Point& q = mixture.positions[id];
            const double dx = p.x - q.x;
            const double dy = p.y - q.y;
            if (dx * dx + dy * dy <= r2) {
                neighbors.push_back(id);
            }
        }
    }
    if (neighbors.empty()) {
        throw Error("track: could not place a new node with at least one neighbor");
    }
    TrackingResult result;
    result.new_node = graph.add_node();
    result.planted = spec.new_node_class;
    result.neighbor_count = neighbors.size();
    for (NodeId id : neighbors) {
        graph.add_edge(id, result.new_node, 1.0);
    }
    truth.assign(result.new_node, spec.new_node_class);
    solver.sync(graph, labels);
    if (spec.post_policy == SelectionKind::new_node_focus) {
        solver.set_policy(SelectionPolicy::new_node_focus(result.new_node), graph);
    }
    result.graph_size = graph.node_count();

    const std::size_t k = labels.num_classes();
    const std::size_t v = graph.row_of(result.new_node);
    std::vector<char> is_neighbor(graph.node_count(), 0);
    for (NodeId id : neighbors) {
        is_neighbor[graph.row_of(id)] = 1;
    }
    result.supported.assign(k, false);
    auto note_support = [&](std::size_t row) {
        const auto values = solver.features().row(row);
        for (std::size_t c = 0; c < k; ++c) {
            if (values[c] != 0.0) {
                result.supported[c] = true;
            }
        }
    };
    for (NodeId id : neighbors) {
        note_support(graph.row_of(id));
    }

    const std::size_t n = graph.node_count();
    for (std::size_t it = 0; it < spec.post_iterations; ++it) {
        for (std::size_t s = 0; s < n; ++s) {
            solver.step();
            if (is_neighbor[solver.last_updated_row()]) {
                note_support(solver.last_updated_row());
            }
        }
        const auto row = solver.features().row(v);
        result.history.emplace_back(row.begin(), row.end());
    }

    const auto final_row = solver.features().row(v);
    result.predicted = static_cast<ClassIndex>(
        std::max_element(final_row.begin(), final_row.end()) - final_row.begin());
    for (std::size_t c = 0; c < k; ++c) {
        if (!result.supported[c]) {
            ++result.unsupported_classes;
            for (const auto& snapshot : result.history) {
                if (snapshot[c] != 0.0) {
                    result.unsupported_exact_zero = false;
                }
            }
        }
    }
    return result;
}

}  // namespace gssl
