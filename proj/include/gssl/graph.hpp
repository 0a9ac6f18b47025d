#pragma once

#include "gssl/errors.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace gssl {

struct Neighbor {
    NodeId id;
    double weight;

    friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Undirected weighted graph with stable node identities.
///
/// Ids are handed out monotonically and never reused. Live nodes are stored
/// in compact rows ordered by ascending id, so row order is the order every
/// row-indexed structure (operators, feature matrices) uses. Each row keeps
/// its neighbor list sorted by id and its weighted degree maintained
/// incrementally.
class SimilarityGraph {
public:
    SimilarityGraph() = default;

    /// Graph whose size may never exceed `capacity` live nodes.
    explicit SimilarityGraph(std::size_t capacity) : capacity_(capacity) {}

    /// Convenience: a graph with ids 0..n-1 and no edges.
    static SimilarityGraph with_nodes(std::size_t n);

    NodeId add_node();
    void remove_node(NodeId id);
    void add_edge(NodeId u, NodeId v, double weight);

    bool contains(NodeId id) const;
    bool has_edge(NodeId u, NodeId v) const;
    double weight(NodeId u, NodeId v) const;  // 0 when absent

    double degree(NodeId id) const;
    std::span<const Neighbor> neighbors(NodeId id) const;

    std::size_t node_count() const noexcept { return ids_.size(); }
    std::size_t edge_count() const noexcept { return edge_count_; }
    bool empty() const noexcept { return ids_.empty(); }

    /// Live ids in ascending order; position == row.
    std::span<const NodeId> node_ids() const noexcept { return ids_; }
    std::size_t row_of(NodeId id) const;
    NodeId id_at(std::size_t row) const { return ids_.at(row); }

    // Row-indexed access for hot loops.
    std::span<const Neighbor> row_neighbors(std::size_t row) const { return adjacency_[row]; }
    double row_degree(std::size_t row) const { return degree_[row]; }

    std::optional<std::size_t> capacity() const noexcept { return capacity_; }
    NodeId next_id() const noexcept { return next_id_; }

    /// Degree recomputed from the stored neighbor list (for invariant checks).
    double recompute_degree(NodeId id) const;

private:
    std::optional<std::size_t> find_row(NodeId id) const;
    std::size_t require_row(NodeId id) const;

    std::optional<std::size_t> capacity_;
    NodeId next_id_ = 0;
    std::size_t edge_count_ = 0;
    std::vector<NodeId> ids_;
    std::vector<std::vector<Neighbor>> adjacency_;
    std::vector<double> degree_;
};

/// True when the graph has one connected component (an empty graph is not).
bool is_connected(const SimilarityGraph& graph);

/// Ids of nodes with no incident edges, ascending.
std::vector<NodeId> isolated_nodes(const SimilarityGraph& graph);

}  // namespace gssl
