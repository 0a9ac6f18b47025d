#pragma once

#include "gssl/feature_matrix.hpp"
#include "gssl/labels.hpp"
#include "gssl/metrics.hpp"
#include "gssl/operators.hpp"
#include "gssl/random.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gssl {

class SimilarityGraph;

/// Step sizes eta_t indexed by the global update counter t.
class StepSchedule {
public:
    enum class Kind { decreasing, constant };

    /// eta_t = 1 / (2 + floor(t / period)).
    static StepSchedule decreasing(std::uint64_t period);
    /// eta_t = eta for all t, eta in (0, 1].
    static StepSchedule constant(double eta);
    /// "dec:<period>" or "const:<eta>".
    static StepSchedule parse(std::string_view spec);

    double at(std::uint64_t t) const;
    Kind kind() const noexcept { return kind_; }
    double parameter() const noexcept { return parameter_; }
    std::string to_string() const;

private:
    StepSchedule(Kind kind, double parameter) : kind_(kind), parameter_(parameter) {}
    Kind kind_;
    double parameter_;
};

enum class SelectionKind { mcmc, round_robin, new_node_focus };

/// Which row gets updated at each step.
struct SelectionPolicy {
    SelectionKind kind = SelectionKind::mcmc;
    NodeId focus = 0;  // only for new_node_focus

    static SelectionPolicy mcmc() { return {SelectionKind::mcmc, 0}; }
    static SelectionPolicy round_robin() { return {SelectionKind::round_robin, 0}; }
    static SelectionPolicy new_node_focus(NodeId v) { return {SelectionKind::new_node_focus, v}; }
};

/// consistent: F_ik += eta r (alpha H_ii F_jk - F_ik + (1 - alpha) Y_ik), whose
/// fixed point is the closed-form solution.
/// printed: F_ik += eta r (H_ii F_jk - F_ik + alpha Y_ik), kept for comparison runs.
enum class UpdateForm { consistent, printed };

enum class InitialFeatures { labels, zeros };

struct SolverConfig {
    double sigma = 0.5;
    double mu = 1.0;
    double epsilon = 0.1;
    StepSchedule schedule = StepSchedule::decreasing(100);
    SelectionPolicy policy = SelectionPolicy::mcmc();
    UpdateForm update = UpdateForm::consistent;
    InitialFeatures initial = InitialFeatures::labels;
    std::uint64_t seed = 1;
    std::uint64_t first_step = 0;  // schedule offset, for continued runs

    double alpha() const { return alpha_from_mu(mu); }
    /// Throws ConfigError naming the offending field.
    void validate() const;
};

struct WalkerState {
    std::size_t current = 0;  // row of X_t
    Rng rng;
    std::uint64_t step = 0;
};

/// Draws j from Q(i, .): uniform with probability eps (always, for rows
/// without neighbors), else from P(i, .).
std::size_t sample_from_q(std::size_t i, Rng& rng, const WalkKernel& kernel);

/// Moves the walker one transition of Q and returns the new row.
std::size_t sample_next(WalkerState& walker, const WalkKernel& kernel);

inline double likelihood_ratio(std::size_t i, std::size_t j, const WalkKernel& kernel) {
    return kernel.likelihood_ratio(i, j);
}

/// Updates every column of row i from the sampled row j.
void sampling_update(FeatureMatrix& f, std::size_t i, std::size_t j, double eta,
                     const DiffusionOperator& op, const WalkKernel& kernel, const FeatureMatrix& y,
                     double alpha, UpdateForm form = UpdateForm::consistent);

/// Stochastic-approximation solver bound to a graph snapshot. After the graph
/// or labels change, call sync() to realign rows and rebuild the operators.
class SamplingSolver {
public:
    SamplingSolver(const SimilarityGraph& graph, const LabelAssignment& labels, SolverConfig config,
                   IsolatedNodes isolated = IsolatedNodes::reject);
    /// Starts from the given features (rows in graph order).
    SamplingSolver(const SimilarityGraph& graph, const LabelAssignment& labels, SolverConfig config,
                   FeatureMatrix initial, IsolatedNodes isolated = IsolatedNodes::reject);

    void step();
    void run(std::uint64_t steps);

    /// Realigns F by node id (new nodes start at zero, departed rows are
    /// dropped) and rebuilds B, Q and Y. A walker whose node left restarts
    /// at a uniformly chosen node.
    void sync(const SimilarityGraph& graph, const LabelAssignment& labels);

    void set_policy(SelectionPolicy policy, const SimilarityGraph& graph);

    const FeatureMatrix& features() const noexcept { return features_; }
    FeatureMatrix& features() noexcept { return features_; }
    std::span<const NodeId> node_ids() const noexcept { return op_.node_ids(); }
    const DiffusionOperator& op() const noexcept { return op_; }
    const WalkKernel& kernel() const noexcept { return kernel_; }
    const WalkerState& walker() const noexcept { return walker_; }
    const SolverConfig& config() const noexcept { return config_; }
    std::uint64_t steps_taken() const noexcept { return walker_.step; }
    std::size_t last_updated_row() const noexcept { return last_row_; }
    std::size_t size() const noexcept { return op_.size(); }

private:
    std::size_t select_row();
    void rebuild_focus_cycle(const SimilarityGraph& graph);

    SolverConfig config_;
    double alpha_;
    IsolatedNodes isolated_;
    DiffusionOperator op_;
    WalkKernel kernel_;
    FeatureMatrix labels_;
    FeatureMatrix features_;
    WalkerState walker_;
    std::size_t cursor_ = 0;
    std::vector<std::size_t> focus_cycle_;
    std::size_t last_row_ = 0;
};

struct SamplingRun {
    FeatureMatrix features;
    TrajectoryRecord trajectory;
};

/// Runs `iterations` x N update steps; when `truth` is given, records the
/// error after every N steps (one iteration).
SamplingRun run_sampling(const SimilarityGraph& graph, const LabelAssignment& labels,
                         const SolverConfig& config, std::size_t iterations,
                         const LabelAssignment* truth = nullptr, bool snapshots = false);

/// Continues from `features` with the new_node_focus(v) policy for `steps`
/// updates. `features` must already hold a (zero) row for v.
FeatureMatrix track_new_node(FeatureMatrix features, const SimilarityGraph& graph,
                             const LabelAssignment& labels, NodeId v, SolverConfig config,
                             std::uint64_t steps);

/// Sum of weighted degrees over N.
double average_degree(const SimilarityGraph& graph);

}  // namespace gssl
