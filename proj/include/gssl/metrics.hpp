#pragma once

#include "gssl/errors.hpp"
#include "gssl/feature_matrix.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace gssl {

class LabelAssignment;
class SimilarityGraph;

using Classification = std::vector<ClassIndex>;

/// Row-wise argmax; ties go to the lowest class index.
Classification classify(const FeatureMatrix& f);

struct ErrorCount {
    std::size_t count = 0;        // misclassified unlabeled nodes
    std::size_t denominator = 0;  // unlabeled nodes considered
    double percentage = 0.0;      // 100 * count / denominator (0 when empty)
};

/// Compares predictions with planted classes over unlabeled nodes only.
/// `nodes[i]` is the id whose prediction is `predicted[i]`; any order works.
ErrorCount error_against(std::span<const NodeId> nodes, std::span<const ClassIndex> predicted,
                         const LabelAssignment& truth, const LabelAssignment& labeled);

/// Same, with predictions in graph row order.
ErrorCount error_against(const SimilarityGraph& graph, const Classification& predicted,
                         const LabelAssignment& truth, const LabelAssignment& labeled);

struct TrajectoryRow {
    std::size_t iteration = 0;
    std::size_t error_count = 0;
    double error_pct = 0.0;
    std::size_t n_nodes = 0;
    double axis = 0.0;  // iteration, or iteration / average degree for sampling runs

    friend bool operator==(const TrajectoryRow&, const TrajectoryRow&) = default;
};

/// Per-iteration error log for one run.
class TrajectoryRecord {
public:
    /// Iteration indices must be strictly increasing.
    void append(const TrajectoryRow& row);
    void append(std::size_t iteration, const ErrorCount& error, std::size_t n_nodes, double axis);
    void append_snapshot(Classification classes) { snapshots_.push_back(std::move(classes)); }

    const std::vector<TrajectoryRow>& rows() const noexcept { return rows_; }
    const std::vector<Classification>& snapshots() const noexcept { return snapshots_; }
    bool empty() const noexcept { return rows_.empty(); }
    const TrajectoryRow& back() const { return rows_.back(); }

    friend bool operator==(const TrajectoryRecord&, const TrajectoryRecord&) = default;

private:
    std::vector<TrajectoryRow> rows_;
    std::vector<Classification> snapshots_;
};

/// Header `iteration,error_count,error_pct,n_nodes`; with `axis_column` an
/// extra trailing `iter_per_avg_degree` column.
void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& record, bool axis_column = false);
TrajectoryRecord read_trajectory_csv(std::istream& in);

}  // namespace gssl
