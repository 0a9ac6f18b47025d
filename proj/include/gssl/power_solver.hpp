#pragma once

#include "gssl/feature_matrix.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace gssl {

class DiffusionOperator;

struct PowerSolveOptions {
    double tolerance = 1e-10;        // on ||F^{t+1} - F^t||_w
    std::size_t max_iterations = 1000;
    unsigned threads = 1;
};

struct PowerSolveReport {
    std::size_t iterations = 0;
    double final_step_weighted = 0.0;  // ||F^{t+1} - F^t||_w
    double final_step_max = 0.0;       // same difference in the max norm
    // ||F^{t+1} - F^t||_w / ||F^t - F^{t-1}||_w, from the second iteration on.
    std::vector<double> step_ratios;
    bool converged = false;
};

struct PowerSolveResult {
    FeatureMatrix features;
    PowerSolveReport report;
};

/// Called after every iteration with the 1-based iteration index.
using PowerObserver = std::function<void(std::size_t, const FeatureMatrix&)>;

/// One application of F -> alpha B F + (1 - alpha) Y.
FeatureMatrix power_step(const FeatureMatrix& f, const DiffusionOperator& op, const FeatureMatrix& y,
                         double alpha, unsigned threads = 1);

/// Iterates the affine map from `initial` until the weighted-norm step drops
/// to the tolerance or the iteration cap is hit. On non-convergence the last
/// iterate is returned with `converged == false`.
PowerSolveResult power_solve(FeatureMatrix initial, const DiffusionOperator& op,
                             const FeatureMatrix& y, double alpha,
                             const PowerSolveOptions& options = {},
                             const PowerObserver& observer = {});

}  // namespace gssl
