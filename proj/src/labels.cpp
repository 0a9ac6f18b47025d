#include "gssl/labels.hpp"

#include "gssl/graph.hpp"

#include <string>

namespace gssl {

void LabelAssignment::assign(NodeId node, ClassIndex cls) {
    if (cls >= num_classes_) {
        throw ConfigError("class index " + std::to_string(cls) + " out of range for " +
                          std::to_string(num_classes_) + " classes");
    }
    labels_[node] = cls;
}

bool LabelAssignment::remove(NodeId node) { return labels_.erase(node) != 0; }

std::optional<ClassIndex> LabelAssignment::class_of(NodeId node) const {
    const auto it = labels_.find(node);
    if (it == labels_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::size_t LabelAssignment::count_in_class(ClassIndex cls) const {
    std::size_t n = 0;
    for (const auto& [node, c] : labels_) {
        n += (c == cls);
    }
    return n;
}

std::vector<NodeId> LabelAssignment::nodes_in_class(ClassIndex cls) const {
    std::vector<NodeId> out;
    for (const auto& [node, c] : labels_) {
        if (c == cls) {
            out.push_back(node);
        }
    }
    return out;
}

FeatureMatrix indicator_matrix(const LabelAssignment& labels, const SimilarityGraph& graph) {
    FeatureMatrix y(graph.node_count(), labels.num_classes());
    for (const auto& [node, cls] : labels.entries()) {
        if (!graph.contains(node)) {
            throw DimensionError("labeled node " + std::to_string(node) + " is not in the graph");
        }
        y(graph.row_of(node), cls) = 1.0;
    }
    return y;
}

}  // namespace gssl
