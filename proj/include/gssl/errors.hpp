#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gssl {

using NodeId = std::uint32_t;
using ClassIndex = std::uint32_t;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class GraphErrc {
    unknown_node,
    self_loop,
    duplicate_edge,
    non_positive_weight,
    capacity_exceeded,
};

class GraphError : public Error {
public:
    GraphError(GraphErrc code, const std::string& what) : Error(what), code_(code) {}
    GraphErrc code() const noexcept { return code_; }

private:
    GraphErrc code_;
};

// Operator construction found nodes with no incident edges.
class ZeroDegreeError : public Error {
public:
    explicit ZeroDegreeError(std::vector<NodeId> nodes);
    const std::vector<NodeId>& nodes() const noexcept { return nodes_; }

private:
    std::vector<NodeId> nodes_;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace gssl
