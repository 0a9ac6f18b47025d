#include <doctest.h>

#include "fixtures.hpp"
#include "gssl/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

using namespace gssl;

TEST_CASE("argmax with lowest-index ties") {
    FeatureMatrix f(3, 2);
    f(0, 0) = 0.6;
    f(0, 1) = 0.4;
    f(1, 0) = 0.5;
    f(1, 1) = 0.5;
    f(2, 1) = 1e-300;
    CHECK(classify(f) == Classification{0, 0, 1});
    CHECK_THROWS_AS(classify(FeatureMatrix(2, 0)), DimensionError);
}

TEST_CASE("argmax ignores row shifts and positive scaling") {
    Rng rng(19);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t k = 1 + rng.index(6);
        FeatureMatrix f(1, k), g(1, k);
        const double shift = 10.0 * rng.normal();
        const double scale = 0.01 + 100.0 * rng.uniform();
        for (std::size_t c = 0; c < k; ++c) {
            f(0, c) = static_cast<double>(rng.index(5));  // frequent ties
        }
        for (std::size_t c = 0; c < k; ++c) {
            g(0, c) = f(0, c) * scale;
        }
        CHECK(classify(g) == classify(f));
        for (std::size_t c = 0; c < k; ++c) {
            g(0, c) = f(0, c) + std::ldexp(std::round(shift), 0);
        }
        CHECK(classify(g) == classify(f));
    }
}

TEST_CASE("error counts exclude labeled nodes") {
    std::vector<NodeId> nodes(12);
    std::iota(nodes.begin(), nodes.end(), 0);
    LabelAssignment truth(2);
    for (NodeId id : nodes) {
        truth.assign(id, id % 2);
    }
    LabelAssignment labeled(2);
    labeled.assign(0, 0);
    labeled.assign(1, 1);

    std::vector<ClassIndex> right(12), wrong(12);
    for (NodeId id : nodes) {
        right[id] = id % 2;
        wrong[id] = 1 - id % 2;
    }
    const auto none = error_against(nodes, right, truth, labeled);
    CHECK(none.count == 0);
    CHECK(none.denominator == 10);
    CHECK(none.percentage == 0.0);

    auto all = wrong;
    const auto every = error_against(nodes, all, truth, labeled);
    CHECK(every.count == 10);
    CHECK(every.percentage == 100.0);

    right[0] = 1;  // labeled node disagreeing is not counted
    CHECK(error_against(nodes, right, truth, labeled).count == 0);

    right[5] = 0;
    const auto one = error_against(nodes, right, truth, labeled);
    CHECK(one.count == 1);
    CHECK(one.percentage == 10.0);

    LabelAssignment partial(2);
    partial.assign(0, 0);
    CHECK_THROWS_AS(error_against(nodes, right, partial, labeled), DimensionError);
    CHECK_THROWS_AS(error_against(std::span<const NodeId>(nodes).first(3), right, truth, labeled), DimensionError);
}

TEST_CASE("error counts do not depend on node order") {
    Rng rng(20);
    std::vector<NodeId> nodes(40);
    std::iota(nodes.begin(), nodes.end(), 100);
    LabelAssignment truth(3), labeled(3);
    std::vector<ClassIndex> pred(40);
    for (std::size_t i = 0; i < 40; ++i) {
        truth.assign(nodes[i], static_cast<ClassIndex>(rng.index(3)));
        pred[i] = static_cast<ClassIndex>(rng.index(3));
    }
    labeled.assign(100, *truth.class_of(100));
    const auto base = error_against(nodes, pred, truth, labeled);
    for (int shuffle = 0; shuffle < 10; ++shuffle) {
        for (std::size_t i = 39; i > 0; --i) {
            const std::size_t j = rng.index(i + 1);
            std::swap(nodes[i], nodes[j]);
            std::swap(pred[i], pred[j]);
        }
        const auto e = error_against(nodes, pred, truth, labeled);
        CHECK(e.count == base.count);
        CHECK(e.denominator == base.denominator);
    }
}

TEST_CASE("trajectory csv") {
    TrajectoryRecord record;
    record.append(1, ErrorCount{3, 71, 100.0 * 3 / 71}, 77, 0.25);
    record.append(2, ErrorCount{0, 71, 0.0}, 77, 0.5);
    CHECK_THROWS(record.append(2, ErrorCount{}, 77, 0.0));

    std::ostringstream plain;
    write_trajectory_csv(plain, record);
    CHECK(plain.str() ==
          "iteration,error_count,error_pct,n_nodes\n"
          "1,3,4.225352112676056,77\n"
          "2,0,0,77\n");

    std::ostringstream wide;
    write_trajectory_csv(wide, record, true);
    CHECK(wide.str().rfind("iteration,error_count,error_pct,n_nodes,iter_per_avg_degree\n", 0) == 0);
    std::istringstream back(wide.str());
    CHECK(read_trajectory_csv(back) == record);

    std::istringstream bad("iteration,errors\n");
    CHECK_THROWS_AS(read_trajectory_csv(bad), ParseError);
}
