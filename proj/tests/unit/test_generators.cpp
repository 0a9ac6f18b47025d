#include <doctest.h>

#include "fixtures.hpp"
#include "gssl/generators.hpp"

#include <cmath>
#include <limits>

using namespace gssl;

TEST_CASE("gaussian mixture corner cases") {
    GaussianMixtureSpec spec;
    spec.n = 2;
    spec.class_probabilities = {1.0};
    spec.centers = {{1.0, 1.0}};
    spec.stddevs = {0.0};
    spec.radius = std::numeric_limits<double>::infinity();
    const auto joined = generate_gaussian_mixture(spec);
    CHECK(joined.graph.edge_count() == 1);
    CHECK(joined.connected);

    spec.n = 5;
    spec.stddevs = {1.0};
    spec.radius = 0.0;
    const auto apart = generate_gaussian_mixture(spec);
    CHECK(apart.graph.edge_count() == 0);
    CHECK_FALSE(apart.connected);

    spec.radius = -1.0;
    CHECK_THROWS_AS(generate_gaussian_mixture(spec), ConfigError);
    spec.radius = 1.0;
    spec.class_probabilities = {0.5};
    CHECK_THROWS_AS(generate_gaussian_mixture(spec), ConfigError);
}

TEST_CASE("gaussian mixture class sizes and geometry") {
    GaussianMixtureSpec spec;
    const auto g = generate_gaussian_mixture(spec);
    REQUIRE(g.graph.node_count() == 500);
    for (ClassIndex c = 0; c < 3; ++c) {
        const double p = spec.class_probabilities[c];
        const double count = static_cast<double>(g.truth.count_in_class(c));
        CHECK(std::abs(count - 500.0 * p) <= 4.0 * std::sqrt(500.0 * p * (1.0 - p)));
    }
    // Edges are exactly the pairs within the radius.
    for (NodeId a = 0; a < 500; ++a) {
        for (NodeId b = a + 1; b < 500; ++b) {
            const double dx = g.positions[a].x - g.positions[b].x;
            const double dy = g.positions[a].y - g.positions[b].y;
            CHECK((dx * dx + dy * dy <= 1.0) == g.graph.has_edge(a, b));
        }
        for (const auto& nb : g.graph.neighbors(a)) {
            CHECK(g.graph.weight(nb.id, a) == 1.0);
        }
    }
    const auto again = generate_gaussian_mixture(spec);
    CHECK(again.truth == g.truth);
    CHECK(again.graph.edge_count() == g.graph.edge_count());
}

TEST_CASE("sbm edge counts") {
    const std::vector<std::size_t> sizes{100, 100};
    const auto g = generate_sbm(sizes, 0.2, 0.01, 3);
    std::size_t intra = 0, inter = 0;
    for (NodeId a : g.graph.node_ids()) {
        for (const auto& nb : g.graph.neighbors(a)) {
            if (nb.id > a) {
                (g.truth.class_of(a) == g.truth.class_of(nb.id) ? intra : inter) += 1;
            }
        }
    }
    const double pairs = 2.0 * 100.0 * 99.0 / 2.0;
    CHECK(std::abs(intra - pairs * 0.2) <= 4.0 * std::sqrt(pairs * 0.2 * 0.8));
    CHECK(std::abs(inter - 1e4 * 0.01) <= 4.0 * std::sqrt(1e4 * 0.01 * 0.99));
    for (NodeId a : g.graph.node_ids()) {
        CHECK(std::abs(g.graph.degree(a) - g.graph.recompute_degree(a)) <= 1e-12);
    }
}

TEST_CASE("sbm extremes") {
    const std::vector<std::size_t> sizes{4, 3};
    const auto cliques = generate_sbm(sizes, 1.0, 0.0, 1);
    CHECK(cliques.graph.edge_count() == 6 + 3);
    CHECK_FALSE(cliques.graph.has_edge(0, 4));
    CHECK(generate_sbm(sizes, 0.0, 0.0, 1).graph.edge_count() == 0);
    CHECK_THROWS_AS(generate_sbm(sizes, 1.5, 0.0, 1), ConfigError);
}

TEST_CASE("labeled nodes are the top-degree members") {
    // Star with hub 0 plus a separate pair.
    auto g = SimilarityGraph::with_nodes(7);
    for (NodeId leaf = 1; leaf <= 4; ++leaf) {
        g.add_edge(0, leaf, 1.0);
    }
    g.add_edge(5, 6, 1.0);
    LabelAssignment truth(2);
    for (NodeId id = 0; id <= 4; ++id) {
        truth.assign(id, 0);
    }
    truth.assign(5, 1);
    truth.assign(6, 1);
    const auto one = pick_labeled_nodes(g, truth, 1);
    CHECK(one.class_of(0) == 0u);
    CHECK(one.class_of(5) == 1u);  // tie with 6, lower id wins
    CHECK(one.size() == 2);
    const auto two = pick_labeled_nodes(g, truth, 2);
    CHECK(two.nodes_in_class(0) == std::vector<NodeId>{0, 1});
    CHECK_THROWS_AS(pick_labeled_nodes(g, truth, 3), ConfigError);
}

TEST_CASE("dropping isolated nodes") {
    auto g = testing::path3();
    g.add_node();
    LabelAssignment truth(1);
    for (NodeId id = 0; id < 4; ++id) {
        truth.assign(id, 0);
    }
    CHECK(drop_isolated_nodes(g, truth) == std::vector<NodeId>{3});
    CHECK(g.node_count() == 3);
    CHECK_FALSE(truth.contains(3));
}

TEST_CASE("label replacement rules") {
    // 0 (class 0, labeled) touches 1 (class 0) and 2 (class 1).
    // 3 is class 0 with degree 2; 4 is class 0 with degree 1.
    auto g = SimilarityGraph::with_nodes(6);
    g.add_edge(0, 1, 1.0);
    g.add_edge(0, 2, 1.0);
    g.add_edge(3, 2, 1.0);
    g.add_edge(3, 5, 1.0);
    g.add_edge(4, 5, 1.0);
    LabelAssignment truth(2);
    for (NodeId id : {0u, 1u, 3u, 4u}) {
        truth.assign(id, 0);
    }
    truth.assign(2, 1);
    truth.assign(5, 1);
    Rng rng(1);

    SUBCASE("single same-class neighbor") {
        LabelAssignment labels(2);
        labels.assign(0, 0);
        const auto out = replace_labeled_node(g, labels, truth, 0, rng);
        CHECK(out.via == ReplacementOutcome::Via::neighbor);
        CHECK(out.node == 1u);
        CHECK(labels.class_of(1) == 0u);
        CHECK_FALSE(labels.contains(0));
    }
    SUBCASE("falls back to the highest-degree class member") {
        LabelAssignment labels(2);
        labels.assign(0, 0);
        labels.assign(1, 0);  // the only neighbor is already labeled
        const auto out = replace_labeled_node(g, labels, truth, 0, rng);
        CHECK(out.via == ReplacementOutcome::Via::highest_degree);
        CHECK(out.node == 3u);
        CHECK(labels.count_in_class(0) == 2);
    }
    SUBCASE("empty class drops the label") {
        LabelAssignment labels(2);
        labels.assign(5, 1);
        labels.assign(2, 1);
        const auto out = replace_labeled_node(g, labels, truth, 5, rng);
        CHECK(out.via == ReplacementOutcome::Via::none);
        CHECK_FALSE(out.node.has_value());
        CHECK(labels.count_in_class(1) == 1);
    }
    SUBCASE("uniform among several neighbors") {
        auto h = SimilarityGraph::with_nodes(4);
        h.add_edge(0, 1, 1.0);
        h.add_edge(0, 2, 1.0);
        h.add_edge(0, 3, 1.0);
        LabelAssignment t(1);
        for (NodeId id = 0; id < 4; ++id) {
            t.assign(id, 0);
        }
        std::vector<int> hits(4, 0);
        const int draws = 30000;
        for (int s = 0; s < draws; ++s) {
            LabelAssignment labels(1);
            labels.assign(0, 0);
            ++hits[*replace_labeled_node(h, labels, t, 0, rng).node];
        }
        CHECK(hits[0] == 0);
        const double sd = std::sqrt(draws * (1.0 / 3.0) * (2.0 / 3.0));
        for (int k = 1; k < 4; ++k) {
            CHECK(std::abs(hits[k] - draws / 3.0) <= 3.0 * sd);
        }
    }
    LabelAssignment none(2);
    CHECK_THROWS_AS(replace_labeled_node(g, none, truth, 0, rng), ConfigError);
}
