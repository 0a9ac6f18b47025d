#pragma once

#include "gssl/graph.hpp"
#include "gssl/labels.hpp"
#include "gssl/random.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace gssl {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// Geometric graph over points drawn from an isotropic 2-D Gaussian mixture.
/// Defaults: three classes with probabilities 0.33/0.33/0.34.
struct GaussianMixtureSpec {
    std::size_t n = 500;
    std::vector<double> class_probabilities{0.33, 0.33, 0.34};
    std::vector<Point> centers{{0.0, 0.0}, {4.0, 0.0}, {2.0, 3.5}};
    std::vector<double> stddevs{1.0, 1.0, 1.0};
    double radius = 1.0;
    std::uint64_t seed = 1;

    void validate() const;
};

struct GaussianMixtureGraph {
    SimilarityGraph graph;
    LabelAssignment truth;
    std::vector<Point> positions;  // by node id
    bool connected = false;
};

/// Joins every pair at distance <= radius with weight 1.
GaussianMixtureGraph generate_gaussian_mixture(const GaussianMixtureSpec& spec);

/// Draws a class from the probability vector.
ClassIndex sample_class(std::span<const double> probabilities, Rng& rng);
Point sample_point(const GaussianMixtureSpec& spec, ClassIndex cls, Rng& rng);

struct PlantedGraph {
    SimilarityGraph graph;
    LabelAssignment truth;
};

/// Static stochastic block model: nodes are numbered class by class; each
/// intra-class pair is joined with probability p_in, inter-class with p_out.
PlantedGraph generate_sbm(std::span<const std::size_t> sizes, double p_in, double p_out,
                          std::uint64_t seed);

/// Top-degree nodes of every class (ties to the lower id).
LabelAssignment pick_labeled_nodes(const SimilarityGraph& graph, const LabelAssignment& truth,
                                   std::size_t per_class);

/// Removes zero-degree nodes from the graph and the reference labels.
/// Returns the removed ids.
std::vector<NodeId> drop_isolated_nodes(SimilarityGraph& graph, LabelAssignment& truth);

struct ReplacementOutcome {
    enum class Via { neighbor, highest_degree, none };
    Via via = Via::none;
    ClassIndex cls = 0;
    std::optional<NodeId> node;
};

/// Hands the label of `departed` (still in the graph) to a uniformly chosen
/// unlabeled same-class neighbor; otherwise to the highest-degree unlabeled
/// member of the class; otherwise the class loses the label. `departed` is
/// removed from `labels` in every case.
ReplacementOutcome replace_labeled_node(const SimilarityGraph& graph, LabelAssignment& labels,
                                        const LabelAssignment& truth, NodeId departed, Rng& rng);

}  // namespace gssl
