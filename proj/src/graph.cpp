#include "gssl/graph.hpp"

#include <algorithm>
#include <string>

namespace gssl {

namespace {

auto neighbor_position(const std::vector<Neighbor>& list, NodeId id) {
    return std::lower_bound(list.begin(), list.end(), id,
                            [](const Neighbor& n, NodeId target) { return n.id < target; });
}

std::string node_name(NodeId id) { return "node " + std::to_string(id); }

}  // namespace

SimilarityGraph SimilarityGraph::with_nodes(std::size_t n) {
    SimilarityGraph g;
    for (std::size_t i = 0; i < n; ++i) {
        g.add_node();
    }
    return g;
}

std::optional<std::size_t> SimilarityGraph::find_row(NodeId id) const {
    const auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - ids_.begin());
}

std::size_t SimilarityGraph::require_row(NodeId id) const {
    if (const auto row = find_row(id)) {
        return *row;
    }
    throw GraphError(GraphErrc::unknown_node, "unknown " + node_name(id));
}

std::size_t SimilarityGraph::row_of(NodeId id) const { return require_row(id); }

bool SimilarityGraph::contains(NodeId id) const { return find_row(id).has_value(); }

NodeId SimilarityGraph::add_node() {
    if (capacity_ && ids_.size() >= *capacity_) {
        throw GraphError(GraphErrc::capacity_exceeded,
                         "graph is at capacity (" + std::to_string(*capacity_) + " nodes)");
    }
    const NodeId id = next_id_++;
    ids_.push_back(id);
    adjacency_.emplace_back();
    degree_.push_back(0.0);
    return id;
}

void SimilarityGraph::remove_node(NodeId id) {
    const std::size_t row = require_row(id);
    for (const Neighbor& n : adjacency_[row]) {
        const std::size_t other = *find_row(n.id);
        auto& list = adjacency_[other];
        list.erase(neighbor_position(list, id));
        degree_[other] -= n.weight;
        if (list.empty()) {
            degree_[other] = 0.0;  // no residual rounding on isolated nodes
        }
    }
    edge_count_ -= adjacency_[row].size();
    const auto offset = static_cast<std::ptrdiff_t>(row);
    ids_.erase(ids_.begin() + offset);
    adjacency_.erase(adjacency_.begin() + offset);
    degree_.erase(degree_.begin() + offset);
}

void SimilarityGraph::add_edge(NodeId u, NodeId v, double weight) {
    if (u == v) {
        throw GraphError(GraphErrc::self_loop, "self-loop on " + node_name(u));
    }
    if (!(weight > 0.0)) {
        throw GraphError(GraphErrc::non_positive_weight,
                         "non-positive weight on edge " + std::to_string(u) + "-" + std::to_string(v));
    }
    const std::size_t ru = require_row(u);
    const std::size_t rv = require_row(v);
    auto& lu = adjacency_[ru];
    const auto pu = neighbor_position(lu, v);
    if (pu != lu.end() && pu->id == v) {
        throw GraphError(GraphErrc::duplicate_edge,
                         "duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
    }
    lu.insert(pu, Neighbor{v, weight});
    auto& lv = adjacency_[rv];
    lv.insert(neighbor_position(lv, u), Neighbor{u, weight});
    degree_[ru] += weight;
    degree_[rv] += weight;
    ++edge_count_;
}

bool SimilarityGraph::has_edge(NodeId u, NodeId v) const { return weight(u, v) > 0.0; }

double SimilarityGraph::weight(NodeId u, NodeId v) const {
    const auto& list = adjacency_[require_row(u)];
    const auto it = neighbor_position(list, v);
    return (it != list.end() && it->id == v) ? it->weight : 0.0;
}

double SimilarityGraph::degree(NodeId id) const { return degree_[require_row(id)]; }

std::span<const Neighbor> SimilarityGraph::neighbors(NodeId id) const {
    return adjacency_[require_row(id)];
}

double SimilarityGraph::recompute_degree(NodeId id) const {
    double sum = 0.0;
    for (const Neighbor& n : neighbors(id)) {
        sum += n.weight;
    }
    return sum;
}

bool is_connected(const SimilarityGraph& graph) {
    const std::size_t n = graph.node_count();
    if (n == 0) {
        return false;
    }
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const std::size_t row = stack.back();
        stack.pop_back();
        for (const Neighbor& nb : graph.row_neighbors(row)) {
            const std::size_t other = graph.row_of(nb.id);
            if (!seen[other]) {
                seen[other] = 1;
                ++reached;
                stack.push_back(other);
            }
        }
    }
    return reached == n;
}

std::vector<NodeId> isolated_nodes(const SimilarityGraph& graph) {
    std::vector<NodeId> out;
    for (std::size_t row = 0; row < graph.node_count(); ++row) {
        if (graph.row_neighbors(row).empty()) {
            out.push_back(graph.id_at(row));
        }
    }
    return out;
}

}  // namespace gssl
