#include "gssl/dense_oracle.hpp"

#include "gssl/errors.hpp"
#include "gssl/graph.hpp"
#include "gssl/operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gssl {

Eigen::MatrixXd dense_adjacency(const SimilarityGraph& graph) {
    const auto n = static_cast<Eigen::Index>(graph.node_count());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t i = 0; i < graph.node_count(); ++i) {
        for (const Neighbor& nb : graph.row_neighbors(i)) {
            a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(graph.row_of(nb.id))) = nb.weight;
        }
    }
    return a;
}

Eigen::MatrixXd dense_operator(const SimilarityGraph& graph, double sigma) {
    const Eigen::MatrixXd a = dense_adjacency(graph);
    const Eigen::VectorXd d = a.rowwise().sum();
    if ((d.array() <= 0.0).any()) {
        throw ZeroDegreeError(isolated_nodes(graph));
    }
    const Eigen::VectorXd left = d.array().pow(-sigma);
    const Eigen::VectorXd right = d.array().pow(sigma - 1.0);
    return left.asDiagonal() * a * right.asDiagonal();
}

FeatureMatrix closed_form_solve(const SimilarityGraph& graph, const FeatureMatrix& y, double sigma,
                                double mu, std::size_t dense_limit) {
    const std::size_t n = graph.node_count();
    if (n > dense_limit) {
        throw ConfigError("closed_form_solve: " + std::to_string(n) + " nodes exceeds dense limit " +
                          std::to_string(dense_limit));
    }
    if (y.rows() != n) {
        throw DimensionError("closed_form_solve: label matrix rows do not match graph size");
    }
    const double alpha = alpha_from_mu(mu);
    const Eigen::MatrixXd b = dense_operator(graph, sigma);
    const auto size = static_cast<Eigen::Index>(n);
    const Eigen::MatrixXd system = Eigen::MatrixXd::Identity(size, size) - alpha * b;
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
    if (!lu.isInvertible()) {
        throw Error("closed_form_solve: I - alpha B is singular");
    }
    const Eigen::MatrixXd f = (1.0 - alpha) * lu.solve(to_eigen(y));
    return from_eigen(f);
}

std::vector<std::complex<double>> spectrum(const Eigen::MatrixXd& m) {
    const Eigen::EigenSolver<Eigen::MatrixXd> solver(m, false);
    if (solver.info() != Eigen::Success) {
        throw Error("spectrum: eigen decomposition failed");
    }
    const Eigen::VectorXcd ev = solver.eigenvalues();
    std::vector<std::complex<double>> out(ev.data(), ev.data() + ev.size());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return out;
}

Eigen::MatrixXd to_eigen(const FeatureMatrix& f) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(f.rows()), static_cast<Eigen::Index>(f.cols()));
    for (std::size_t i = 0; i < f.rows(); ++i) {
        for (std::size_t c = 0; c < f.cols(); ++c) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = f(i, c);
        }
    }
    return m;
}

FeatureMatrix from_eigen(const Eigen::MatrixXd& m) {
    FeatureMatrix f(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            f(static_cast<std::size_t>(i), static_cast<std::size_t>(c)) = m(i, c);
        }
    }
    return f;
}

}  // namespace gssl
