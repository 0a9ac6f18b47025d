#include "gssl/metrics.hpp"

#include "gssl/graph.hpp"
#include "gssl/io.hpp"
#include "gssl/labels.hpp"

#include <istream>
#include <ostream>
#include <string>

namespace gssl {

Classification classify(const FeatureMatrix& f) {
    if (f.cols() == 0) {
        throw DimensionError("classify: need at least one class");
    }
    Classification out(f.rows());
    for (std::size_t i = 0; i < f.rows(); ++i) {
        const auto row = f.row(i);
        ClassIndex best = 0;
        for (std::size_t c = 1; c < row.size(); ++c) {
            if (row[c] > row[best]) {
                best = static_cast<ClassIndex>(c);
            }
        }
        out[i] = best;
    }
    return out;
}

ErrorCount error_against(std::span<const NodeId> nodes, std::span<const ClassIndex> predicted,
                         const LabelAssignment& truth, const LabelAssignment& labeled) {
    if (nodes.size() != predicted.size()) {
        throw DimensionError("error_against: predictions do not match node list");
    }
    ErrorCount e;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (labeled.contains(nodes[i])) {
            continue;
        }
        const auto expected = truth.class_of(nodes[i]);
        if (!expected) {
            throw DimensionError("error_against: node " + std::to_string(nodes[i]) +
                                 " has no reference class");
        }
        ++e.denominator;
        e.count += (*expected != predicted[i]);
    }
    if (e.denominator > 0) {
        e.percentage = 100.0 * static_cast<double>(e.count) / static_cast<double>(e.denominator);
    }
    return e;
}

ErrorCount error_against(const SimilarityGraph& graph, const Classification& predicted,
                         const LabelAssignment& truth, const LabelAssignment& labeled) {
    return error_against(graph.node_ids(), predicted, truth, labeled);
}

void TrajectoryRecord::append(const TrajectoryRow& row) {
    if (!rows_.empty() && row.iteration <= rows_.back().iteration) {
        throw Error("trajectory iterations must be strictly increasing");
    }
    rows_.push_back(row);
}

void TrajectoryRecord::append(std::size_t iteration, const ErrorCount& error, std::size_t n_nodes,
                              double axis) {
    append(TrajectoryRow{iteration, error.count, error.percentage, n_nodes, axis});
}

void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& record, bool axis_column) {
    out << "iteration,error_count,error_pct,n_nodes";
    if (axis_column) {
        out << ",iter_per_avg_degree";
    }
    out << '\n';
    for (const auto& r : record.rows()) {
        out << r.iteration << ',' << r.error_count << ',' << format_number(r.error_pct) << ','
            << r.n_nodes;
        if (axis_column) {
            out << ',' << format_number(r.axis);
        }
        out << '\n';
    }
}

TrajectoryRecord read_trajectory_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("trajectory csv: missing header");
    }
    bool axis_column = false;
    if (line == "iteration,error_count,error_pct,n_nodes,iter_per_avg_degree") {
        axis_column = true;
    } else if (line != "iteration,error_count,error_pct,n_nodes") {
        throw ParseError("trajectory csv: unexpected header '" + line + "'");
    }
    TrajectoryRecord record;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const auto fields = split_csv_line(line);
        if (fields.size() != (axis_column ? 5u : 4u)) {
            throw ParseError("trajectory csv line " + std::to_string(line_no) + ": wrong field count");
        }
        TrajectoryRow row;
        row.iteration = parse_unsigned(fields[0], "iteration");
        row.error_count = parse_unsigned(fields[1], "error_count");
        row.error_pct = parse_double(fields[2], "error_pct");
        row.n_nodes = parse_unsigned(fields[3], "n_nodes");
        row.axis = axis_column ? parse_double(fields[4], "iter_per_avg_degree")
                               : static_cast<double>(row.iteration);
        record.append(row);
    }
    return record;
}

}  // namespace gssl
