#pragma once

#include "gssl/errors.hpp"
#include "gssl/feature_matrix.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace gssl {

class SimilarityGraph;

/// Compressed sparse row storage; columns are graph rows.
struct CsrMatrix {
    std::vector<std::size_t> row_ptr{0};
    std::vector<std::size_t> col;
    std::vector<double> value;

    std::size_t rows() const noexcept { return row_ptr.size() - 1; }
    std::size_t nonzeros() const noexcept { return value.size(); }
};

/// How operator construction treats nodes with zero degree.
enum class IsolatedNodes {
    reject,  // throw ZeroDegreeError
    allow,   // empty rows, H_ii = 0 (dynamic graphs)
};

/// B = D^{-sigma} A D^{sigma-1} over a graph snapshot, with row sums H.
///
/// Immutable after construction. Row i corresponds to graph row i.
class DiffusionOperator {
public:
    DiffusionOperator(const SimilarityGraph& graph, double sigma,
                      IsolatedNodes isolated = IsolatedNodes::reject);

    std::size_t size() const noexcept { return matrix_.rows(); }
    double sigma() const noexcept { return sigma_; }

    const CsrMatrix& matrix() const noexcept { return matrix_; }
    std::span<const double> row_sums() const noexcept { return row_sums_; }
    std::span<const double> degrees() const noexcept { return degrees_; }
    std::span<const NodeId> node_ids() const noexcept { return ids_; }

    /// B_ij by row index (0 outside the sparsity pattern).
    double entry(std::size_t i, std::size_t j) const;

    /// out = B x. Rows are split across `threads` workers; each row's dot
    /// product is accumulated sequentially in CSR order, so the result does
    /// not depend on the worker count.
    void apply(const FeatureMatrix& x, FeatureMatrix& out, unsigned threads = 1) const;

private:
    double sigma_;
    std::vector<NodeId> ids_;
    std::vector<double> degrees_;
    CsrMatrix matrix_;
    std::vector<double> row_sums_;
};

DiffusionOperator build_operator(const SimilarityGraph& graph, double sigma,
                                 IsolatedNodes isolated = IsolatedNodes::reject);

/// alpha = 2 / (2 + mu); requires mu > 0.
double alpha_from_mu(double mu);

struct PerronWeights {
    std::vector<double> w;  // w_i = d(i)^{1 - sigma}
    bool connected;         // eigenvector is the unique Perron vector only if true
};

/// Positive eigenvector of B for eigenvalue 1 (Bw = w holds for any graph
/// with positive degrees; uniqueness needs connectivity).
PerronWeights perron_weights(const SimilarityGraph& graph, double sigma);

/// max_i |x_i| / w_i
double weighted_norm(std::span<const double> x, std::span<const double> w);
/// Largest column-wise weighted norm.
double weighted_norm(const FeatureMatrix& x, std::span<const double> w);

/// The regularized objective
///   2 sum_k F_k^T D^{s-1} L D^{s-1} F_k + mu sum_k (F_k - Y_k)^T D^{2s-1} (F_k - Y_k)
/// with L = D - A. Always non-negative.
double objective(const FeatureMatrix& f, const FeatureMatrix& y, const SimilarityGraph& graph,
                 double sigma, double mu);

/// Row-stochastic P = H^{-1} B plus the teleporting kernel
/// Q = (1 - eps) P + (eps / N) E, which is never stored densely.
class WalkKernel {
public:
    WalkKernel(const DiffusionOperator& op, double epsilon);

    std::size_t size() const noexcept { return n_; }
    double epsilon() const noexcept { return epsilon_; }

    double p(std::size_t i, std::size_t j) const;
    double q(std::size_t i, std::size_t j) const;
    /// p(i, j) / q(i, j); zero when j is not a neighbor of i.
    double likelihood_ratio(std::size_t i, std::size_t j) const;

    bool has_neighbors(std::size_t i) const { return row_ptr_[i + 1] > row_ptr_[i]; }

    /// Draws from P(i, .) by inverting the row CDF at u in [0, 1).
    std::size_t sample_neighbor(std::size_t i, double u) const;

    std::span<const double> row_probabilities(std::size_t i) const {
        return {prob_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
    }
    std::span<const std::size_t> row_columns(std::size_t i) const {
        return {col_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
    }

private:
    std::size_t n_;
    double epsilon_;
    std::vector<std::size_t> row_ptr_;
    std::vector<std::size_t> col_;
    std::vector<double> prob_;
    std::vector<double> cumulative_;
};

}  // namespace gssl
