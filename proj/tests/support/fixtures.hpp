#pragma once

#include "gssl/graph.hpp"
#include "gssl/labels.hpp"
#include "gssl/random.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <string>

namespace gssl::testing {

inline std::filesystem::path data_dir() { return GSSL_DATA_DIR; }

// a - b - c with unit weights (ids 0, 1, 2)
inline SimilarityGraph path3() {
    auto g = SimilarityGraph::with_nodes(3);
    g.add_edge(0, 1, 1.0);
    g.add_edge(1, 2, 1.0);
    return g;
}

inline SimilarityGraph two_nodes() {
    auto g = SimilarityGraph::with_nodes(2);
    g.add_edge(0, 1, 1.0);
    return g;
}

// Random spanning tree plus extra edges with probability p; weights in
// [0.5, 2) when weighted, otherwise 1.
inline SimilarityGraph random_connected_graph(std::size_t n, double p, Rng& rng, bool weighted = true) {
    auto g = SimilarityGraph::with_nodes(n);
    auto draw_weight = [&] { return weighted ? 0.5 + 1.5 * rng.uniform() : 1.0; };
    for (NodeId v = 1; v < n; ++v) {
        g.add_edge(static_cast<NodeId>(rng.index(v)), v, draw_weight());
    }
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = u + 1; v < n; ++v) {
            if (!g.has_edge(u, v) && rng.bernoulli(p)) {
                g.add_edge(u, v, draw_weight());
            }
        }
    }
    return g;
}

inline LabelAssignment random_labels(const SimilarityGraph& g, std::size_t k, Rng& rng) {
    LabelAssignment labels(k);
    const auto ids = g.node_ids();
    for (std::size_t c = 0; c < k; ++c) {
        NodeId id = ids[rng.index(ids.size())];
        while (labels.contains(id)) {
            id = ids[rng.index(ids.size())];
        }
        labels.assign(id, static_cast<ClassIndex>(c));
    }
    return labels;
}

// Dense matrices assembled straight from the edge list, independent of the
// library's operator code.
inline Eigen::MatrixXd adjacency_of(const SimilarityGraph& g) {
    const auto n = static_cast<Eigen::Index>(g.node_count());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t r = 0; r < g.node_count(); ++r) {
        for (const auto& nb : g.row_neighbors(r)) {
            a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(g.row_of(nb.id))) = nb.weight;
        }
    }
    return a;
}

inline Eigen::MatrixXd operator_oracle(const SimilarityGraph& g, double sigma) {
    const Eigen::MatrixXd a = adjacency_of(g);
    const Eigen::VectorXd d = a.rowwise().sum();
    const Eigen::VectorXd left = d.array().pow(-sigma);
    const Eigen::VectorXd right = d.array().pow(sigma - 1.0);
    return left.asDiagonal() * a * right.asDiagonal();
}

inline Eigen::MatrixXd fixed_point_oracle(const SimilarityGraph& g, const Eigen::MatrixXd& y,
                                          double sigma, double mu) {
    const double alpha = 2.0 / (2.0 + mu);
    const auto n = static_cast<Eigen::Index>(g.node_count());
    const Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n) - alpha * operator_oracle(g, sigma);
    return (1.0 - alpha) * m.partialPivLu().solve(y);
}

}  // namespace gssl::testing
