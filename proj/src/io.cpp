#include "gssl/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <utility>

namespace gssl {

namespace {

std::vector<std::string_view> split_whitespace(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
            ++i;
        }
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') {
            ++i;
        }
        if (i > start) {
            out.push_back(line.substr(start, i - start));
        }
    }
    return out;
}

std::string_view strip_comment(std::string_view line) {
    const auto hash = line.find('#');
    return hash == std::string_view::npos ? line : line.substr(0, hash);
}

std::ifstream open_input(const std::filesystem::path& path, const char* what) {
    std::ifstream in(path);
    if (!in) {
        throw IoError(std::string("cannot open ") + what + " '" + path.string() + "'");
    }
    return in;
}

std::string at_line(std::size_t line_no) { return "line " + std::to_string(line_no) + ": "; }

}  // namespace

std::string format_number(double value) {
    std::array<char, 32> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) {
        throw Error("format_number: conversion failed");
    }
    return std::string(buf.data(), end);
}

double parse_double(std::string_view text, std::string_view field) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ParseError("invalid number '" + std::string(text) + "' for " + std::string(field));
    }
    return value;
}

std::size_t parse_unsigned(std::string_view text, std::string_view field) {
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ParseError("invalid non-negative integer '" + std::string(text) + "' for " +
                         std::string(field));
    }
    return value;
}

std::vector<std::string_view> split_csv_line(std::string_view line) {
    if (!line.empty() && line.back() == '\r') {
        line.remove_suffix(1);
    }
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

SimilarityGraph read_edge_list(std::istream& in, const EdgeListOptions& options) {
    struct Edge {
        NodeId u, v;
        double w;
        std::size_t line;
    };
    std::vector<Edge> edges;
    NodeId max_id = 0;
    bool any = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto tokens = split_whitespace(strip_comment(line));
        if (tokens.empty()) {
            continue;
        }
        if (tokens.size() != 3) {
            throw ParseError(at_line(line_no) + "expected '<u> <v> <w>'");
        }
        Edge e{};
        try {
            e.u = static_cast<NodeId>(parse_unsigned(tokens[0], "node id"));
            e.v = static_cast<NodeId>(parse_unsigned(tokens[1], "node id"));
            e.w = parse_double(tokens[2], "edge weight");
        } catch (const ParseError& err) {
            throw ParseError(at_line(line_no) + err.what());
        }
        if (options.unit_weights) {
            e.w = 1.0;
        }
        e.line = line_no;
        max_id = std::max({max_id, e.u, e.v});
        any = true;
        edges.push_back(e);
    }
    SimilarityGraph graph = SimilarityGraph::with_nodes(any ? static_cast<std::size_t>(max_id) + 1 : 0);
    for (const Edge& e : edges) {
        try {
            graph.add_edge(e.u, e.v, e.w);
        } catch (const GraphError& err) {
            throw ParseError(at_line(e.line) + err.what());
        }
    }
    return graph;
}

SimilarityGraph load_edge_list(const std::filesystem::path& path, const EdgeListOptions& options) {
    auto in = open_input(path, "edge list");
    try {
        return read_edge_list(in, options);
    } catch (const ParseError& err) {
        throw ParseError(path.string() + ": " + err.what());
    }
}

void write_edge_list(std::ostream& out, const SimilarityGraph& graph) {
    for (std::size_t row = 0; row < graph.node_count(); ++row) {
        const NodeId u = graph.id_at(row);
        for (const Neighbor& nb : graph.row_neighbors(row)) {
            if (u < nb.id) {
                out << u << ' ' << nb.id << ' ' << format_number(nb.weight) << '\n';
            }
        }
    }
}

LabelAssignment read_labels(std::istream& in, std::optional<std::size_t> num_classes) {
    std::vector<std::pair<NodeId, ClassIndex>> entries;
    std::string line;
    std::size_t line_no = 0;
    std::size_t max_class = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto tokens = split_whitespace(strip_comment(line));
        if (tokens.empty()) {
            continue;
        }
        if (tokens.size() != 2) {
            throw ParseError(at_line(line_no) + "expected '<node-id> <class-index>'");
        }
        try {
            const auto node = static_cast<NodeId>(parse_unsigned(tokens[0], "node id"));
            const auto cls = static_cast<ClassIndex>(parse_unsigned(tokens[1], "class index"));
            entries.emplace_back(node, cls);
            max_class = std::max<std::size_t>(max_class, cls);
        } catch (const ParseError& err) {
            throw ParseError(at_line(line_no) + err.what());
        }
    }
    const std::size_t k = num_classes.value_or(entries.empty() ? 0 : max_class + 1);
    LabelAssignment labels(k);
    for (const auto& [node, cls] : entries) {
        if (labels.contains(node)) {
            throw ParseError("node " + std::to_string(node) + " is labeled more than once");
        }
        labels.assign(node, cls);
    }
    return labels;
}

LabelAssignment load_labels(const std::filesystem::path& path, std::optional<std::size_t> num_classes) {
    auto in = open_input(path, "label file");
    try {
        return read_labels(in, num_classes);
    } catch (const Error& err) {
        throw ParseError(path.string() + ": " + err.what());
    }
}

void write_labels(std::ostream& out, const LabelAssignment& labels) {
    for (const auto& [node, cls] : labels.entries()) {
        out << node << ' ' << cls << '\n';
    }
}

std::map<NodeId, std::string> read_names(std::istream& in) {
    std::map<NodeId, std::string> names;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto tokens = split_whitespace(strip_comment(line));
        if (tokens.empty()) {
            continue;
        }
        if (tokens.size() != 2) {
            throw ParseError(at_line(line_no) + "expected '<id> <name>'");
        }
        names[static_cast<NodeId>(parse_unsigned(tokens[0], "node id"))] = std::string(tokens[1]);
    }
    return names;
}

std::map<NodeId, std::string> load_names(const std::filesystem::path& path) {
    auto in = open_input(path, "name file");
    return read_names(in);
}

void write_features_csv(std::ostream& out, std::span<const NodeId> ids, const FeatureMatrix& f) {
    if (ids.size() != f.rows()) {
        throw DimensionError("write_features_csv: id count does not match feature rows");
    }
    out << "node_id";
    for (std::size_t c = 0; c < f.cols(); ++c) {
        out << ",f_" << c;
    }
    out << ",class\n";
    const Classification classes = classify(f);
    for (std::size_t i = 0; i < f.rows(); ++i) {
        out << ids[i];
        for (double v : f.row(i)) {
            out << ',' << format_number(v);
        }
        out << ',' << classes[i] << '\n';
    }
}

FeaturesTable read_features_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("features csv: missing header");
    }
    const auto header = split_csv_line(line);
    if (header.size() < 3 || header.front() != "node_id" || header.back() != "class") {
        throw ParseError("features csv: unexpected header");
    }
    const std::size_t k = header.size() - 2;
    std::vector<double> values;
    FeaturesTable table;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const auto fields = split_csv_line(line);
        if (fields.size() != k + 2) {
            throw ParseError("features csv line " + std::to_string(line_no) + ": wrong field count");
        }
        table.ids.push_back(static_cast<NodeId>(parse_unsigned(fields[0], "node_id")));
        for (std::size_t c = 0; c < k; ++c) {
            values.push_back(parse_double(fields[c + 1], "feature"));
        }
        table.classes.push_back(static_cast<ClassIndex>(parse_unsigned(fields[k + 1], "class")));
    }
    table.features = FeatureMatrix(table.ids.size(), k);
    std::copy(values.begin(), values.end(), table.features.data().begin());
    return table;
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write '" + path.string() + "'");
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

}  // namespace gssl
