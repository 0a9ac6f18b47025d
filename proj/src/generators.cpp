#include "gssl/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace gssl {

namespace {

void validate_probabilities(std::span<const double> probabilities, const char* what) {
    if (probabilities.empty()) {
        throw ConfigError(std::string(what) + ": need at least one class");
    }
    double sum = 0.0;
    for (double p : probabilities) {
        if (!(p >= 0.0)) {
            throw ConfigError(std::string(what) + ": class probabilities must be non-negative");
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw ConfigError(std::string(what) + ": class probabilities must sum to 1");
    }
}

void validate_probability(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ConfigError(std::string(name) + " must lie in [0, 1]");
    }
}

}  // namespace

void GaussianMixtureSpec::validate() const {
    if (n < 1) {
        throw ConfigError("gaussian mixture: n must be at least 1");
    }
    validate_probabilities(class_probabilities, "gaussian mixture");
    if (centers.size() != class_probabilities.size() || stddevs.size() != class_probabilities.size()) {
        throw ConfigError("gaussian mixture: centers and stddevs need one entry per class");
    }
    for (double s : stddevs) {
        if (!(s >= 0.0)) {
            throw ConfigError("gaussian mixture: stddev must be non-negative");
        }
    }
    if (!(radius >= 0.0)) {
        throw ConfigError("gaussian mixture: radius must be non-negative");
    }
}

ClassIndex sample_class(std::span<const double> probabilities, Rng& rng) {
    const double u = rng.uniform();
    double running = 0.0;
    for (std::size_t c = 0; c < probabilities.size(); ++c) {
        running += probabilities[c];
        if (u < running) {
            return static_cast<ClassIndex>(c);
        }
    }
    // Rounding left u above the running total; return the last class with mass.
    for (std::size_t c = probabilities.size(); c-- > 0;) {
        if (probabilities[c] > 0.0) {
            return static_cast<ClassIndex>(c);
        }
    }
    return 0;
}

Point sample_point(const GaussianMixtureSpec& spec, ClassIndex cls, Rng& rng) {
    const Point& c = spec.centers[cls];
    const double s = spec.stddevs[cls];
    const double dx = rng.normal();
    const double dy = rng.normal();
    return {c.x + s * dx, c.y + s * dy};
}

GaussianMixtureGraph generate_gaussian_mixture(const GaussianMixtureSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    GaussianMixtureGraph out{SimilarityGraph::with_nodes(spec.n),
                             LabelAssignment(spec.class_probabilities.size()),
                             {},
                             false};
    out.positions.reserve(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
        const ClassIndex cls = sample_class(spec.class_probabilities, rng);
        out.truth.assign(static_cast<NodeId>(i), cls);
        out.positions.push_back(sample_point(spec, cls, rng));
    }
    const double r2 = spec.radius * spec.radius;
    for (std::size_t i = 0; i < spec.n; ++i) {
        for (std::size_t j = i + 1; j < spec.n; ++j) {
            const double dx = out.positions[i].x - out.positions[j].x;
            const double dy = out.positions[i].y - out.positions[j].y;
            if (dx * dx + dy * dy <= r2) {
                out.graph.add_edge(static_cast<NodeId>(i), static_cast<NodeId>(j), 1.0);
            }
        }
    }
    out.connected = is_connected(out.graph);
    return out;
}

PlantedGraph generate_sbm(std::span<const std::size_t> sizes, double p_in, double p_out,
                          std::uint64_t seed) {
    validate_probability(p_in, "p_in");
    validate_probability(p_out, "p_out");
    const std::size_t n = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
    PlantedGraph out{SimilarityGraph::with_nodes(n), LabelAssignment(sizes.size())};
    std::vector<ClassIndex> cls(n);
    std::size_t next = 0;
    for (std::size_t c = 0; c < sizes.size(); ++c) {
        for (std::size_t k = 0; k < sizes[c]; ++k, ++next) {
            cls[next] = static_cast<ClassIndex>(c);
            out.truth.assign(static_cast<NodeId>(next), static_cast<ClassIndex>(c));
        }
    }
    Rng rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double p = cls[i] == cls[j] ? p_in : p_out;
            if (rng.bernoulli(p)) {
                out.graph.add_edge(static_cast<NodeId>(i), static_cast<NodeId>(j), 1.0);
            }
        }
    }
    return out;
}

LabelAssignment pick_labeled_nodes(const SimilarityGraph& graph, const LabelAssignment& truth,
                                   std::size_t per_class) {
    LabelAssignment labels(truth.num_classes());
    for (ClassIndex c = 0; c < truth.num_classes(); ++c) {
        std::vector<NodeId> members;
        for (NodeId id : truth.nodes_in_class(c)) {
            if (graph.contains(id)) {
                members.push_back(id);
            }
        }
        if (members.size() < per_class) {
            throw ConfigError("class " + std::to_string(c) + " has " + std::to_string(members.size()) +
                              " nodes, fewer than " + std::to_string(per_class) + " to label");
        }
        std::stable_sort(members.begin(), members.end(), [&](NodeId a, NodeId b) {
            const double da = graph.degree(a);
            const double db = graph.degree(b);
            return da != db ? da > db : a < b;
        });
        for (std::size_t k = 0; k < per_class; ++k) {
            labels.assign(members[k], c);
        }
    }
    return labels;
}

std::vector<NodeId> drop_isolated_nodes(SimilarityGraph& graph, LabelAssignment& truth) {
    auto isolated = isolated_nodes(graph);
    for (NodeId id : isolated) {
        graph.remove_node(id);
        truth.remove(id);
    }
    return isolated;
}

ReplacementOutcome replace_labeled_node(const SimilarityGraph& graph, LabelAssignment& labels,
                                        const LabelAssignment& truth, NodeId departed, Rng& rng) {
    const auto cls = labels.class_of(departed);
    if (!cls) {
        throw ConfigError("replace_labeled_node: node " + std::to_string(departed) + " is not labeled");
    }
    labels.remove(departed);
    ReplacementOutcome out;
    out.cls = *cls;

    std::vector<NodeId> candidates;
    for (const Neighbor& nb : graph.neighbors(departed)) {
        if (truth.class_of(nb.id) == *cls && !labels.contains(nb.id)) {
            candidates.push_back(nb.id);
        }
    }
    if (!candidates.empty()) {
        out.via = ReplacementOutcome::Via::neighbor;
        out.node = candidates[rng.index(candidates.size())];
    } else {
        std::optional<NodeId> best;
        for (NodeId id : truth.nodes_in_class(*cls)) {
            if (id == departed || labels.contains(id) || !graph.contains(id)) {
                continue;
            }
            if (!best || graph.degree(id) > graph.degree(*best)) {
                best = id;
            }
        }
        if (best) {
            out.via = ReplacementOutcome::Via::highest_degree;
            out.node = best;
        }
    }
    if (out.node) {
        labels.assign(*out.node, *cls);
    }
    return out;
}

}  // namespace gssl
