#pragma once

#include "turfbbn/core/variable.hpp"

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace turfbbn {

struct Edge {
    std::size_t parent = 0;
    std::size_t child = 0;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

using NamedEdge = std::pair<std::string, std::string>;

/// Topological order of `n` nodes given as index edges. Ties are broken by
/// the lowest index first. Throws CycleDetected.
std::vector<std::size_t> topological_order(std::size_t n, const std::vector<Edge>& edges);

/// Immutable directed acyclic graph over declared variables.
class Dag {
public:
    Dag(std::vector<Variable> variables, std::vector<Edge> edges);
    Dag(std::vector<Variable> variables, const std::vector<NamedEdge>& edges);

    std::size_t size() const noexcept { return variables_.size(); }
    const std::vector<Variable>& variables() const noexcept { return variables_; }
    const Variable& variable(std::size_t i) const { return variables_.at(i); }

    /// Sorted by (parent, child).
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    std::vector<NamedEdge> named_edges() const;

    std::optional<std::size_t> find(std::string_view name) const;
    /// Throws UnknownVariable.
    std::size_t index_of(std::string_view name) const;

    /// Ascending variable index.
    const std::vector<std::size_t>& parents(std::size_t i) const { return parents_.at(i); }
    const std::vector<std::size_t>& children(std::size_t i) const { return children_.at(i); }
    bool has_edge(std::size_t parent, std::size_t child) const;

    const std::vector<std::size_t>& order() const noexcept { return order_; }

    friend bool operator==(const Dag& a, const Dag& b) {
        return a.variables_ == b.variables_ && a.edges_ == b.edges_;
    }

private:
    std::vector<Variable> variables_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> parents_;
    std::vector<std::vector<std::size_t>> children_;
    std::vector<std::size_t> order_;
};

/// Variable names in topological order; ties by declaration order.
std::vector<std::string> topological_order(const Dag& dag);

}  // namespace turfbbn
