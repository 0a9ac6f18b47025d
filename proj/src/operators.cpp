#include "gssl/operators.hpp"

#include "gssl/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

namespace gssl {

namespace {

std::string zero_degree_message(const std::vector<NodeId>& nodes) {
    std::string msg = "zero-degree node(s):";
    const std::size_t shown = std::min<std::size_t>(nodes.size(), 20);
    for (std::size_t i = 0; i < shown; ++i) {
        msg += ' ' + std::to_string(nodes[i]);
    }
    if (shown < nodes.size()) {
        msg += " ... (" + std::to_string(nodes.size()) + " total)";
    }
    return msg;
}

void require_same_shape(const FeatureMatrix& a, const FeatureMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError(std::string(what) + ": shape mismatch");
    }
}

}  // namespace

ZeroDegreeError::ZeroDegreeError(std::vector<NodeId> nodes)
    : Error(zero_degree_message(nodes)), nodes_(std::move(nodes)) {}

DiffusionOperator::DiffusionOperator(const SimilarityGraph& graph, double sigma,
                                     IsolatedNodes isolated)
    : sigma_(sigma) {
    const std::size_t n = graph.node_count();
    if (isolated == IsolatedNodes::reject) {
        if (auto bad = isolated_nodes(graph); !bad.empty()) {
            throw ZeroDegreeError(std::move(bad));
        }
    }
    ids_.assign(graph.node_ids().begin(), graph.node_ids().end());
    degrees_.resize(n);
    std::vector<double> left(n), right(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = graph.row_degree(i);
        degrees_[i] = d;
        if (d > 0.0) {
            left[i] = std::pow(d, -sigma);
            right[i] = std::pow(d, sigma - 1.0);
        }
    }

    matrix_.row_ptr.reserve(n + 1);
    matrix_.col.reserve(2 * graph.edge_count());
    matrix_.value.reserve(2 * graph.edge_count());
    row_sums_.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (const Neighbor& nb : graph.row_neighbors(i)) {
            const std::size_t j = graph.row_of(nb.id);
            const double b = left[i] * nb.weight * right[j];
            matrix_.col.push_back(j);
            matrix_.value.push_back(b);
            sum += b;
        }
        matrix_.row_ptr.push_back(matrix_.col.size());
        row_sums_[i] = sum;
    }
}

DiffusionOperator build_operator(const SimilarityGraph& graph, double sigma,
                                 IsolatedNodes isolated) {
    return DiffusionOperator(graph, sigma, isolated);
}

double DiffusionOperator::entry(std::size_t i, std::size_t j) const {
    const auto first = matrix_.col.begin() + static_cast<std::ptrdiff_t>(matrix_.row_ptr[i]);
    const auto last = matrix_.col.begin() + static_cast<std::ptrdiff_t>(matrix_.row_ptr[i + 1]);
    const auto it = std::lower_bound(first, last, j);
    if (it == last || *it != j) {
        return 0.0;
    }
    return matrix_.value[static_cast<std::size_t>(it - matrix_.col.begin())];
}

void DiffusionOperator::apply(const FeatureMatrix& x, FeatureMatrix& out, unsigned threads) const {
    const std::size_t n = size();
    if (x.rows() != n) {
        throw DimensionError("operator apply: row count mismatch");
    }
    if (out.rows() != n || out.cols() != x.cols()) {
        out = FeatureMatrix(n, x.cols());
    }
    const std::size_t k = x.cols();
    auto rows = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            auto dst = out.row(i);
            std::fill(dst.begin(), dst.end(), 0.0);
            for (std::size_t e = matrix_.row_ptr[i]; e < matrix_.row_ptr[i + 1]; ++e) {
                const double b = matrix_.value[e];
                const auto src = x.row(matrix_.col[e]);
                for (std::size_t c = 0; c < k; ++c) {
                    dst[c] += b * src[c];
                }
            }
        }
    };

    const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n, 1));
    if (workers == 1) {
        rows(0, n);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 1; w < workers; ++w) {
        const std::size_t begin = std::min(n, w * chunk);
        const std::size_t end = std::min(n, begin + chunk);
        pool.emplace_back(rows, begin, end);
    }
    rows(0, std::min(n, chunk));
}

double alpha_from_mu(double mu) {
    if (!(mu > 0.0) || !std::isfinite(mu)) {
        throw ConfigError("mu must be a positive finite number");
    }
    return 2.0 / (2.0 + mu);
}

PerronWeights perron_weights(const SimilarityGraph& graph, double sigma) {
    if (auto bad = isolated_nodes(graph); !bad.empty()) {
        throw ZeroDegreeError(std::move(bad));
    }
    PerronWeights pw{std::vector<double>(graph.node_count()), is_connected(graph)};
    for (std::size_t i = 0; i < graph.node_count(); ++i) {
        pw.w[i] = std::pow(graph.row_degree(i), 1.0 - sigma);
    }
    return pw;
}

double weighted_norm(std::span<const double> x, std::span<const double> w) {
    if (x.size() != w.size()) {
        throw DimensionError("weighted_norm: length mismatch");
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        norm = std::max(norm, std::abs(x[i]) / w[i]);
    }
    return norm;
}

double weighted_norm(const FeatureMatrix& x, std::span<const double> w) {
    if (x.rows() != w.size()) {
        throw DimensionError("weighted_norm: length mismatch");
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) {
        for (double v : x.row(i)) {
            norm = std::max(norm, std::abs(v) / w[i]);
        }
    }
    return norm;
}

double objective(const FeatureMatrix& f, const FeatureMatrix& y, const SimilarityGraph& graph,
                 double sigma, double mu) {
    require_same_shape(f, y, "objective");
    const std::size_t n = graph.node_count();
    if (f.rows() != n) {
        throw DimensionError("objective: feature rows do not match graph size");
    }
    if (auto bad = isolated_nodes(graph); !bad.empty()) {
        throw ZeroDegreeError(std::move(bad));
    }
    const std::size_t k = f.cols();

    // g = D^{sigma-1} F; the smoothness term is sum over ordered pairs
    // A_ij (g_i - g_j)^2, which equals 2 g^T L g.
    FeatureMatrix g(n, k);
    std::vector<double> fit_weight(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = graph.row_degree(i);
        const double scale = std::pow(d, sigma - 1.0);
        fit_weight[i] = std::pow(d, 2.0 * sigma - 1.0);
        for (std::size_t c = 0; c < k; ++c) {
            g(i, c) = scale * f(i, c);
        }
    }
    double smooth = 0.0;
    double fit = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (const Neighbor& nb : graph.row_neighbors(i)) {
            const std::size_t j = graph.row_of(nb.id);
            for (std::size_t c = 0; c < k; ++c) {
                const double diff = g(i, c) - g(j, c);
                smooth += nb.weight * diff * diff;
            }
        }
        for (std::size_t c = 0; c < k; ++c) {
            const double r = f(i, c) - y(i, c);
            fit += fit_weight[i] * r * r;
        }
    }
    return smooth + mu * fit;
}

WalkKernel::WalkKernel(const DiffusionOperator& op, double epsilon)
    : n_(op.size()),
      epsilon_(epsilon),
      row_ptr_(op.matrix().row_ptr),
      col_(op.matrix().col),
      prob_(op.matrix().nonzeros()),
      cumulative_(op.matrix().nonzeros()) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw ConfigError("teleport epsilon must lie in [0, 1]");
    }
    const auto& value = op.matrix().value;
    const auto h = op.row_sums();
    for (std::size_t i = 0; i < n_; ++i) {
        double running = 0.0;
        for (std::size_t e = row_ptr_[i]; e < row_ptr_[i + 1]; ++e) {
            prob_[e] = value[e] / h[i];
            running += prob_[e];
            cumulative_[e] = running;
        }
    }
}

double WalkKernel::p(std::size_t i, std::size_t j) const {
    const auto first = col_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i]);
    const auto last = col_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i + 1]);
    const auto it = std::lower_bound(first, last, j);
    if (it == last || *it != j) {
        return 0.0;
    }
    return prob_[static_cast<std::size_t>(it - col_.begin())];
}

double WalkKernel::q(std::size_t i, std::size_t j) const {
    const double uniform = 1.0 / static_cast<double>(n_);
    if (!has_neighbors(i)) {
        return uniform;  // dangling row: always teleports
    }
    return (1.0 - epsilon_) * p(i, j) + epsilon_ * uniform;
}

double WalkKernel::likelihood_ratio(std::size_t i, std::size_t j) const {
    const double pij = p(i, j);
    if (pij == 0.0) {
        return 0.0;
    }
    return pij / q(i, j);
}

std::size_t WalkKernel::sample_neighbor(std::size_t i, double u) const {
    const std::size_t begin = row_ptr_[i];
    const std::size_t end = row_ptr_[i + 1];
    if (begin == end) {
        throw Error("sample_neighbor: node has no neighbors");
    }
    const double target = u * cumulative_[end - 1];
    const auto first = cumulative_.begin() + static_cast<std::ptrdiff_t>(begin);
    const auto last = cumulative_.begin() + static_cast<std::ptrdiff_t>(end);
    auto it = std::upper_bound(first, last, target);
    if (it == last) {
        --it;
    }
    return col_[static_cast<std::size_t>(it - cumulative_.begin())];
}

}  // namespace gssl
