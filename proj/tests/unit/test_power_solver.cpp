#include <doctest.h>

#include "fixtures.hpp"
#include "gssl/dense_oracle.hpp"
#include "gssl/operators.hpp"
#include "gssl/power_solver.hpp"

#include <cmath>

using namespace gssl;
using doctest::Approx;

namespace {

struct Instance {
    SimilarityGraph graph;
    FeatureMatrix y;
    double sigma;
    double mu;
};

Instance random_instance(Rng& rng, std::size_t max_n = 50) {
    auto g = testing::random_connected_graph(5 + rng.index(max_n - 4), 0.15, rng);
    const auto labels = testing::random_labels(g, 1 + rng.index(4), rng);
    auto y = indicator_matrix(labels, g);
    const double sigma = std::vector<double>{0.0, 0.5, 1.0}[rng.index(3)];
    const double mu = std::vector<double>{0.5, 1.0, 2.0}[rng.index(3)];
    return {std::move(g), std::move(y), sigma, mu};
}

double distance(const FeatureMatrix& a, const FeatureMatrix& b, const std::vector<double>& w) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            m = std::max(m, std::abs(a(i, k) - b(i, k)) / w[i]);
        }
    }
    return m;
}

}  // namespace

TEST_CASE("one step on two nodes") {
    const auto g = testing::two_nodes();
    FeatureMatrix y(2, 1);
    y(0, 0) = 1.0;
    const auto op = build_operator(g, 0.5);
    const auto f1 = power_step(y, op, y, 2.0 / 3.0);
    CHECK(f1(0, 0) == Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(f1(1, 0) == Approx(2.0 / 3.0).epsilon(1e-15));

    FeatureMatrix junk(2, 1, 7.5);
    CHECK(power_step(junk, op, y, 0.0) == y);
    const FeatureMatrix zero(2, 1);
    CHECK(power_step(zero, op, zero, 0.5) == zero);
    CHECK_THROWS_AS(power_step(FeatureMatrix(3, 1), op, y, 0.5), DimensionError);
}

TEST_CASE("power iteration reaches the closed form") {
    Rng rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        const auto in = random_instance(rng);
        const auto op = build_operator(in.graph, in.sigma);
        const auto result = power_solve(in.y, op, in.y, alpha_from_mu(in.mu));
        CHECK(result.report.converged);
        const auto exact = testing::fixed_point_oracle(in.graph, to_eigen(in.y), in.sigma, in.mu);
        CHECK(max_abs_difference(result.features, from_eigen(exact)) <= 1e-8);
    }
}

TEST_CASE("stopping rule bounds the distance to the fixed point") {
    Rng rng(102);
    for (int trial = 0; trial < 20; ++trial) {
        const auto in = random_instance(rng);
        const double alpha = alpha_from_mu(in.mu);
        const double tol = 1e-6;
        const auto op = build_operator(in.graph, in.sigma);
        const auto w = perron_weights(in.graph, in.sigma).w;
        const auto result = power_solve(FeatureMatrix(in.y.rows(), in.y.cols()), op, in.y, alpha,
                                        {tol, 1000, 1});
        REQUIRE(result.report.converged);
        CHECK(result.report.final_step_weighted <= tol);
        const auto exact = from_eigen(testing::fixed_point_oracle(in.graph, to_eigen(in.y), in.sigma, in.mu));
        CHECK(distance(result.features, exact, w) <= tol * alpha / (1.0 - alpha) + 1e-12);
    }
}

TEST_CASE("starting at the fixed point converges at once") {
    Rng rng(103);
    const auto in = random_instance(rng);
    const auto op = build_operator(in.graph, in.sigma);
    const auto exact = closed_form_solve(in.graph, in.y, in.sigma, in.mu);
    const auto result = power_solve(exact, op, in.y, alpha_from_mu(in.mu));
    CHECK(result.report.iterations == 1);
    CHECK(result.report.converged);
}

TEST_CASE("non-convergence returns the last iterate") {
    Rng rng(104);
    const auto in = random_instance(rng);
    const auto op = build_operator(in.graph, in.sigma);
    const auto result = power_solve(in.y, op, in.y, alpha_from_mu(in.mu), {1e-14, 3, 1});
    CHECK(result.report.iterations == 3);
    CHECK_FALSE(result.report.converged);
    CHECK(result.features.all_finite());
    CHECK_THROWS_AS(power_solve(in.y, op, in.y, 0.5, {0.0, 3, 1}), ConfigError);
}

// Starts offset from F* along the Perron vector decay exactly like alpha^t,
// so the iteration count is predictable.
TEST_CASE("iteration count follows the contraction rate") {
    Rng rng(105);
    for (int trial = 0; trial < 20; ++trial) {
        const auto in = random_instance(rng);
        const double alpha = alpha_from_mu(in.mu);
        const double tol = 1e-10;
        const auto op = build_operator(in.graph, in.sigma);
        const auto w = perron_weights(in.graph, in.sigma).w;
        const auto exact = from_eigen(testing::fixed_point_oracle(in.graph, to_eigen(in.y), in.sigma, in.mu));
        FeatureMatrix f0 = exact;
        for (std::size_t i = 0; i < f0.rows(); ++i) {
            for (std::size_t k = 0; k < f0.cols(); ++k) {
                f0(i, k) += w[i] * (1.0 + 0.1 * (2.0 * rng.uniform() - 1.0));
            }
        }
        const double e0 = distance(f0, exact, w);
        std::size_t reached = 0;
        power_solve(f0, op, in.y, alpha, {1e-300, 400, 1}, [&](std::size_t t, const FeatureMatrix& f) {
            if (reached == 0 && distance(f, exact, w) <= tol) {
                reached = t;
            }
        });
        const double predicted = std::log(tol / e0) / std::log(alpha);
        CHECK(reached > 0);
        CHECK(std::abs(static_cast<double>(reached) - predicted) <= 3.0);
    }
}

TEST_CASE("errors shrink geometrically") {
    Rng rng(106);
    for (int trial = 0; trial < 30; ++trial) {
        const auto in = random_instance(rng);
        const double alpha = alpha_from_mu(in.mu);
        const auto op = build_operator(in.graph, in.sigma);
        const auto w = perron_weights(in.graph, in.sigma).w;
        const auto exact = from_eigen(testing::fixed_point_oracle(in.graph, to_eigen(in.y), in.sigma, in.mu));
        double previous = distance(in.y, exact, w);
        power_solve(in.y, op, in.y, alpha, {1e-10, 1000, 1}, [&](std::size_t, const FeatureMatrix& f) {
            const double e = distance(f, exact, w);
            CHECK(e <= alpha * previous + 1e-12);
            previous = e;
        });
    }
}

TEST_CASE("columns are solved independently") {
    Rng rng(107);
    const auto in = random_instance(rng);
    const auto op = build_operator(in.graph, in.sigma);
    const double alpha = alpha_from_mu(in.mu);
    const PowerSolveOptions options{1e-300, 60, 1};
    const auto joint = power_solve(in.y, op, in.y, alpha, options).features;
    for (std::size_t k = 0; k < in.y.cols(); ++k) {
        FeatureMatrix yk(in.y.rows(), 1);
        for (std::size_t i = 0; i < in.y.rows(); ++i) {
            yk(i, 0) = in.y(i, k);
        }
        const auto single = power_solve(yk, op, yk, alpha, options).features;
        for (std::size_t i = 0; i < in.y.rows(); ++i) {
            CHECK(single(i, 0) == joint(i, k));
        }
    }
}

TEST_CASE("thread count does not change the result") {
    Rng rng(108);
    auto g = testing::random_connected_graph(3000, 0.002, rng);
    const auto labels = testing::random_labels(g, 4, rng);
    const auto y = indicator_matrix(labels, g);
    const auto op = build_operator(g, 0.5);
    const auto one = power_solve(y, op, y, 2.0 / 3.0, {1e-10, 1000, 1});
    for (unsigned threads : {2u, 3u, 8u}) {
        const auto many = power_solve(y, op, y, 2.0 / 3.0, {1e-10, 1000, threads});
        CHECK(many.features == one.features);
        CHECK(many.report.iterations == one.report.iterations);
    }
}
