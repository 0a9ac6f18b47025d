#pragma once

#include "gssl/feature_matrix.hpp"
#include "gssl/generators.hpp"
#include "gssl/sampling_solver.hpp"

#include <cstdint>
#include <vector>

namespace gssl {

/// New-node tracking on a Gaussian mixture graph: pretrain with MCMC
/// sampling, insert one node drawn from a chosen class, keep going.
struct TrackingSpec {
    GaussianMixtureSpec mixture;
    std::size_t labeled_per_class = 2;
    std::size_t pretrain_iterations = 200;
    std::size_t post_iterations = 20;
    ClassIndex new_node_class = 1;
    SelectionKind post_policy = SelectionKind::mcmc;  // or new_node_focus
    SolverConfig solver = [] {
        SolverConfig c;
        c.schedule = StepSchedule::decreasing(1000);
        return c;
    }();
};

struct TrackingResult {
    NodeId new_node = 0;
    ClassIndex planted = 0;
    ClassIndex predicted = 0;
    std::size_t neighbor_count = 0;
    std::size_t graph_size = 0;  // after insertion
    // Row of the new node after each post-insertion iteration.
    std::vector<std::vector<double>> history;
    // supported[k]: some neighbor held a nonzero F_jk at some point after insertion.
    std::vector<bool> supported;
    // Every unsupported class stayed exactly 0 in the new node's row.
    bool unsupported_exact_zero = true;
    std::size_t unsupported_classes = 0;
};

TrackingResult run_tracking_experiment(const TrackingSpec& spec);

}  // namespace gssl
