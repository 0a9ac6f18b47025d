#include "gssl/power_solver.hpp"

#include "gssl/errors.hpp"
#include "gssl/operators.hpp"

#include <algorithm>
#include <cmath>

namespace gssl {

namespace {

void check_shapes(const FeatureMatrix& f, const DiffusionOperator& op, const FeatureMatrix& y) {
    if (f.rows() != op.size() || y.rows() != op.size() || f.cols() != y.cols()) {
        throw DimensionError("power iteration: F, Y and operator dimensions disagree");
    }
}

}  // namespace

FeatureMatrix power_step(const FeatureMatrix& f, const DiffusionOperator& op, const FeatureMatrix& y,
                         double alpha, unsigned threads) {
    check_shapes(f, op, y);
    FeatureMatrix next;
    op.apply(f, next, threads);
    auto out = next.data();
    const auto labels = y.data();
    for (std::size_t e = 0; e < out.size(); ++e) {
        out[e] = alpha * out[e] + (1.0 - alpha) * labels[e];
    }
    return next;
}

PowerSolveResult power_solve(FeatureMatrix initial, const DiffusionOperator& op,
                             const FeatureMatrix& y, double alpha, const PowerSolveOptions& options,
                             const PowerObserver& observer) {
    check_shapes(initial, op, y);
    if (!(options.tolerance > 0.0)) {
        throw ConfigError("power_solve: tolerance must be positive");
    }
    std::vector<double> w(op.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] = std::pow(op.degrees()[i], 1.0 - op.sigma());
    }

    PowerSolveResult result{std::move(initial), {}};
    auto& report = result.report;
    double previous_step = 0.0;
    for (std::size_t t = 1; t <= options.max_iterations; ++t) {
        FeatureMatrix next = power_step(result.features, op, y, alpha, options.threads);
        double step_w = 0.0;
        double step_max = 0.0;
        for (std::size_t i = 0; i < next.rows(); ++i) {
            const auto a = next.row(i);
            const auto b = result.features.row(i);
            for (std::size_t c = 0; c < a.size(); ++c) {
                const double diff = std::abs(a[c] - b[c]);
                step_max = std::max(step_max, diff);
                step_w = std::max(step_w, diff / w[i]);
            }
        }
        if (t > 1) {
            report.step_ratios.push_back(previous_step > 0.0 ? step_w / previous_step : 0.0);
        }
        previous_step = step_w;
        result.features = std::move(next);
        report.iterations = t;
        report.final_step_weighted = step_w;
        report.final_step_max = step_max;
        if (observer) {
            observer(t, result.features);
        }
        if (step_w <= options.tolerance) {
            report.converged = true;
            break;
        }
    }
    return result;
}

}  // namespace gssl
