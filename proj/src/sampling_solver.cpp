#include "gssl/sampling_solver.hpp"

#include "gssl/graph.hpp"
#include "gssl/io.hpp"

#include <algorithm>
#include <cmath>

namespace gssl {

StepSchedule StepSchedule::decreasing(std::uint64_t period) {
    if (period == 0) {
        throw ConfigError("schedule: decreasing period must be positive");
    }
    return {Kind::decreasing, static_cast<double>(period)};
}

StepSchedule StepSchedule::constant(double eta) {
    if (!(eta > 0.0 && eta <= 1.0)) {
        throw ConfigError("schedule: constant step must lie in (0, 1]");
    }
    return {Kind::constant, eta};
}

StepSchedule StepSchedule::parse(std::string_view spec) {
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos) {
        throw ConfigError("schedule: expected 'dec:<period>' or 'const:<eta>', got '" +
                          std::string(spec) + "'");
    }
    const auto kind = spec.substr(0, colon);
    const auto value = spec.substr(colon + 1);
    try {
        if (kind == "dec") {
            return decreasing(parse_unsigned(value, "schedule period"));
        }
        if (kind == "const") {
            return constant(parse_double(value, "schedule step"));
        }
    } catch (const ParseError& err) {
        throw ConfigError(std::string("schedule: ") + err.what());
    }
    throw ConfigError("schedule: unknown kind '" + std::string(kind) + "'");
}

double StepSchedule::at(std::uint64_t t) const {
    if (kind_ == Kind::constant) {
        return parameter_;
    }
    const auto period = static_cast<std::uint64_t>(parameter_);
    return 1.0 / (2.0 + static_cast<double>(t / period));
}

std::string StepSchedule::to_string() const {
    if (kind_ == Kind::constant) {
        return "const:" + format_number(parameter_);
    }
    return "dec:" + std::to_string(static_cast<std::uint64_t>(parameter_));
}

void SolverConfig::validate() const {
    if (!std::isfinite(sigma)) {
        throw ConfigError("sigma must be finite");
    }
    if (!(mu > 0.0) || !std::isfinite(mu)) {
        throw ConfigError("mu must be positive");
    }
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw ConfigError("epsilon must lie in (0, 1)");
    }
}

std::size_t sample_from_q(std::size_t i, Rng& rng, const WalkKernel& kernel) {
    if (!kernel.has_neighbors(i) || rng.uniform() < kernel.epsilon()) {
        return static_cast<std::size_t>(rng.index(kernel.size()));
    }
    return kernel.sample_neighbor(i, rng.uniform());
}

std::size_t sample_next(WalkerState& walker, const WalkKernel& kernel) {
    walker.current = sample_from_q(walker.current, walker.rng, kernel);
    return walker.current;
}

void sampling_update(FeatureMatrix& f, std::size_t i, std::size_t j, double eta,
                     const DiffusionOperator& op, const WalkKernel& kernel, const FeatureMatrix& y,
                     double alpha, UpdateForm form) {
    const double ratio = kernel.likelihood_ratio(i, j);
    if (ratio == 0.0 || eta == 0.0) {
        return;
    }
    const double h = op.row_sums()[i];
    const double pull = form == UpdateForm::consistent ? alpha * h : h;
    const double anchor = form == UpdateForm::consistent ? 1.0 - alpha : alpha;
    const double gain = eta * ratio;
    auto target = f.row(i);
    const auto source = f.row(j);
    const auto label = y.row(i);
    for (std::size_t c = 0; c < target.size(); ++c) {
        target[c] += gain * (pull * source[c] - target[c] + anchor * label[c]);
    }
}

SamplingSolver::SamplingSolver(const SimilarityGraph& graph, const LabelAssignment& labels,
                               SolverConfig config, IsolatedNodes isolated)
    : SamplingSolver(graph, labels, config,
                     config.initial == InitialFeatures::labels
                         ? indicator_matrix(labels, graph)
                         : FeatureMatrix(graph.node_count(), labels.num_classes()),
                     isolated) {}

SamplingSolver::SamplingSolver(const SimilarityGraph& graph, const LabelAssignment& labels,
                               SolverConfig config, FeatureMatrix initial, IsolatedNodes isolated)
    : config_(config),
      alpha_(config.alpha()),
      isolated_(isolated),
      op_(graph, config.sigma, isolated),
      kernel_(op_, config.epsilon),
      labels_(indicator_matrix(labels, graph)),
      features_(std::move(initial)),
      walker_{0, Rng(config.seed), config.first_step} {
    config_.validate();
    if (graph.empty()) {
        throw Error("sampling solver: empty graph");
    }
    if (features_.rows() != graph.node_count() || features_.cols() != labels.num_classes()) {
        throw DimensionError("sampling solver: initial features have the wrong shape");
    }
    walker_.current = static_cast<std::size_t>(walker_.rng.index(size()));
    rebuild_focus_cycle(graph);
}

void SamplingSolver::rebuild_focus_cycle(const SimilarityGraph& graph) {
    focus_cycle_.clear();
    if (config_.policy.kind != SelectionKind::new_node_focus) {
        return;
    }
    const NodeId v = config_.policy.focus;
    if (!graph.contains(v)) {
        throw GraphError(GraphErrc::unknown_node, "focus node " + std::to_string(v) + " is not in the graph");
    }
    const auto nbrs = graph.neighbors(v);
    if (nbrs.empty()) {
        throw Error("focus node " + std::to_string(v) + " has no neighbors to sample");
    }
    focus_cycle_.push_back(graph.row_of(v));
    for (const Neighbor& nb : nbrs) {
        focus_cycle_.push_back(graph.row_of(nb.id));
    }
    cursor_ = 0;
}

void SamplingSolver::set_policy(SelectionPolicy policy, const SimilarityGraph& graph) {
    config_.policy = policy;
    cursor_ = 0;
    rebuild_focus_cycle(graph);
}

std::size_t SamplingSolver::select_row() {
    switch (config_.policy.kind) {
        case SelectionKind::mcmc:
            return walker_.current;
        case SelectionKind::round_robin: {
            const std::size_t row = cursor_;
            cursor_ = (cursor_ + 1) % size();
            return row;
        }
        case SelectionKind::new_node_focus: {
            const std::size_t row = focus_cycle_[cursor_];
            cursor_ = (cursor_ + 1) % focus_cycle_.size();
            return row;
        }
    }
    return walker_.current;
}

void SamplingSolver::step() {
    const std::size_t i = select_row();
    std::size_t j = 0;
    if (config_.policy.kind == SelectionKind::mcmc) {
        j = sample_next(walker_, kernel_);
    } else {
        j = sample_from_q(i, walker_.rng, kernel_);
    }
    sampling_update(features_, i, j, config_.schedule.at(walker_.step), op_, kernel_, labels_, alpha_,
                    config_.update);
    last_row_ = i;
    ++walker_.step;
}

void SamplingSolver::run(std::uint64_t steps) {
    for (std::uint64_t s = 0; s < steps; ++s) {
        step();
    }
}

void SamplingSolver::sync(const SimilarityGraph& graph, const LabelAssignment& labels) {
    if (graph.empty()) {
        throw Error("sampling solver: empty graph");
    }
    const auto old_ids = op_.node_ids();
    const auto new_ids = graph.node_ids();
    const std::size_t k = features_.cols();
    FeatureMatrix remapped(new_ids.size(), k);
    std::vector<std::size_t> old_to_new(old_ids.size(), SIZE_MAX);
    for (std::size_t a = 0, b = 0; a < old_ids.size() && b < new_ids.size();) {
        if (old_ids[a] < new_ids[b]) {
            ++a;
        } else if (new_ids[b] < old_ids[a]) {
            ++b;
        } else {
            std::copy(features_.row(a).begin(), features_.row(a).end(), remapped.row(b).begin());
            old_to_new[a] = b;
            ++a;
            ++b;
        }
    }
    const std::size_t walker_row = old_to_new[walker_.current];
    const std::size_t cursor_id_row = config_.policy.kind == SelectionKind::round_robin && cursor_ < old_ids.size()
                                          ? old_to_new[cursor_]
                                          : SIZE_MAX;

    features_ = std::move(remapped);
    op_ = DiffusionOperator(graph, config_.sigma, isolated_);
    kernel_ = WalkKernel(op_, config_.epsilon);
    labels_ = indicator_matrix(labels, graph);

    walker_.current = walker_row != SIZE_MAX ? walker_row
                                             : static_cast<std::size_t>(walker_.rng.index(size()));
    if (config_.policy.kind == SelectionKind::round_robin) {
        cursor_ = cursor_id_row != SIZE_MAX ? cursor_id_row : std::min(cursor_, size() - 1);
    }
    rebuild_focus_cycle(graph);
}

double average_degree(const SimilarityGraph& graph) {
    if (graph.empty()) {
        return 0.0;
    }
    double total = 0.0;
    for (std::size_t row = 0; row < graph.node_count(); ++row) {
        total += graph.row_degree(row);
    }
    return total / static_cast<double>(graph.node_count());
}

SamplingRun run_sampling(const SimilarityGraph& graph, const LabelAssignment& labels,
                         const SolverConfig& config, std::size_t iterations,
                         const LabelAssignment* truth, bool snapshots) {
    if (graph.empty()) {
        throw Error("run_sampling: empty graph");
    }
    SamplingSolver solver(graph, labels, config);
    SamplingRun out;
    const std::size_t n = graph.node_count();
    const double avg_degree = average_degree(graph);
    for (std::size_t it = 1; it <= iterations; ++it) {
        solver.run(n);
        if (truth != nullptr || snapshots) {
            Classification classes = classify(solver.features());
            if (truth != nullptr) {
                out.trajectory.append(it, error_against(graph, classes, *truth, labels), n,
                                      static_cast<double>(it) / avg_degree);
            }
            if (snapshots) {
                out.trajectory.append_snapshot(std::move(classes));
            }
        }
    }
    out.features = std::move(solver.features());
    return out;
}

FeatureMatrix track_new_node(FeatureMatrix features, const SimilarityGraph& graph,
                             const LabelAssignment& labels, NodeId v, SolverConfig config,
                             std::uint64_t steps) {
    config.policy = SelectionPolicy::new_node_focus(v);
    SamplingSolver solver(graph, labels, config, std::move(features));
    solver.run(steps);
    return std::move(solver.features());
}

}  // namespace gssl
