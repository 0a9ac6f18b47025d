#pragma once

#include "gssl/errors.hpp"
#include "gssl/feature_matrix.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

namespace gssl {

class SimilarityGraph;

/// Map from node id to class index in [0, K).
///
/// Also used for planted/ground-truth classes, where every node is present.
class LabelAssignment {
public:
    explicit LabelAssignment(std::size_t num_classes = 0) : num_classes_(num_classes) {}

    std::size_t num_classes() const noexcept { return num_classes_; }
    std::size_t size() const noexcept { return labels_.size(); }
    bool empty() const noexcept { return labels_.empty(); }

    /// Sets (or replaces) the class of `node`.
    void assign(NodeId node, ClassIndex cls);
    /// Removes `node` if present; returns whether it was labeled.
    bool remove(NodeId node);

    bool contains(NodeId node) const { return labels_.count(node) != 0; }
    std::optional<ClassIndex> class_of(NodeId node) const;

    std::size_t count_in_class(ClassIndex cls) const;
    std::vector<NodeId> nodes_in_class(ClassIndex cls) const;

    const std::map<NodeId, ClassIndex>& entries() const noexcept { return labels_; }

    friend bool operator==(const LabelAssignment&, const LabelAssignment&) = default;

private:
    std::size_t num_classes_;
    std::map<NodeId, ClassIndex> labels_;
};

/// The N x K indicator matrix Y in graph row order. Every labeled node must
/// be present in the graph.
FeatureMatrix indicator_matrix(const LabelAssignment& labels, const SimilarityGraph& graph);

}  // namespace gssl
