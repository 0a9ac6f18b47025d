#pragma once

// Small dense reference computations used to verify the iterative solvers.

#include "gssl/feature_matrix.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <vector>

namespace gssl {

class SimilarityGraph;

inline constexpr std::size_t kDefaultDenseLimit = 2000;

/// Dense A and D^{-sigma} A D^{sigma-1}.
Eigen::MatrixXd dense_adjacency(const SimilarityGraph& graph);
Eigen::MatrixXd dense_operator(const SimilarityGraph& graph, double sigma);

/// F* = (1 - alpha) (I - alpha B)^{-1} Y, column by column.
FeatureMatrix closed_form_solve(const SimilarityGraph& graph, const FeatureMatrix& y, double sigma,
                                double mu, std::size_t dense_limit = kDefaultDenseLimit);

/// Eigenvalues of a square dense matrix, sorted by (real, imag).
std::vector<std::complex<double>> spectrum(const Eigen::MatrixXd& m);

Eigen::MatrixXd to_eigen(const FeatureMatrix& f);
FeatureMatrix from_eigen(const Eigen::MatrixXd& m);

}  // namespace gssl
