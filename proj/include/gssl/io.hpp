#pragma once

#include "gssl/errors.hpp"
#include "gssl/feature_matrix.hpp"
#include "gssl/graph.hpp"
#include "gssl/labels.hpp"
#include "gssl/metrics.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gssl {

class IoError : public Error {
public:
    using Error::Error;
};

/// Shortest decimal text that round-trips the double (locale independent).
std::string format_number(double value);

double parse_double(std::string_view text, std::string_view field);
std::size_t parse_unsigned(std::string_view text, std::string_view field);
std::vector<std::string_view> split_csv_line(std::string_view line);

struct EdgeListOptions {
    bool unit_weights = false;  // replace every weight with 1
};

/// Edge list: `<u> <v> <w>` per line, whitespace separated, `#` comments,
/// each undirected edge once. Creates nodes 0..max_id.
SimilarityGraph read_edge_list(std::istream& in, const EdgeListOptions& options = {});
SimilarityGraph load_edge_list(const std::filesystem::path& path, const EdgeListOptions& options = {});
void write_edge_list(std::ostream& out, const SimilarityGraph& graph);

/// Label file: `<node-id> <class-index>` per line. Without `num_classes`
/// the class count is one more than the largest index seen.
LabelAssignment read_labels(std::istream& in, std::optional<std::size_t> num_classes = std::nullopt);
LabelAssignment load_labels(const std::filesystem::path& path,
                            std::optional<std::size_t> num_classes = std::nullopt);
void write_labels(std::ostream& out, const LabelAssignment& labels);

/// `<id> <name>` per line (names without whitespace).
std::map<NodeId, std::string> read_names(std::istream& in);
std::map<NodeId, std::string> load_names(const std::filesystem::path& path);

/// Features CSV: `node_id,f_0,...,f_{K-1},class`.
void write_features_csv(std::ostream& out, std::span<const NodeId> ids, const FeatureMatrix& f);

struct FeaturesTable {
    std::vector<NodeId> ids;
    FeatureMatrix features;
    Classification classes;
};
FeaturesTable read_features_csv(std::istream& in);

void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace gssl
