#include "turfbbn/core/dag.hpp"

#include "turfbbn/error.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>

namespace turfbbn {

std::vector<std::size_t> topological_order(std::size_t n, const std::vector<Edge>& edges) {
    std::vector<std::size_t> in_degree(n, 0);
    std::vector<std::vector<std::size_t>> out(n);
    for (const auto& e : edges) {
        out[e.parent].push_back(e.child);
        ++in_degree[e.child];
    }
    // Kahn's algorithm with a min-heap so ties resolve to declaration order.
    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
    for (std::size_t i = 0; i < n; ++i) {
        if (in_degree[i] == 0) ready.push(i);
    }
    std::vector<std::size_t> order;
    order.reserve(n);
    while (!ready.empty()) {
        std::size_t v = ready.top();
        ready.pop();
        order.push_back(v);
        for (std::size_t c : out[v]) {
            if (--in_degree[c] == 0) ready.push(c);
        }
    }
    if (order.size() != n) throw Error(ErrorCode::CycleDetected, "graph contains a directed cycle");
    return order;
}

Dag::Dag(std::vector<Variable> variables, std::vector<Edge> edges)
    : variables_(std::move(variables)), edges_(std::move(edges)) {
    std::set<std::string_view> names;
    for (const auto& v : variables_) {
        v.validate();
        if (!names.insert(v.name).second) {
            throw Error(ErrorCode::InvalidVariable, "variable '" + v.name + "' declared twice");
        }
    }
    const std::size_t n = variables_.size();
    for (const auto& e : edges_) {
        if (e.parent >= n || e.child >= n) throw Error(ErrorCode::UnknownVariable, "edge endpoint out of range");
        if (e.parent == e.child) {
            throw Error(ErrorCode::CycleDetected, "self-edge on '" + variables_[e.parent].name + "'");
        }
    }
    std::sort(edges_.begin(), edges_.end());
    if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
        throw Error(ErrorCode::DuplicateEdge,
                    variables_[dup->parent].name + " -> " + variables_[dup->child].name);
    }
    order_ = topological_order(n, edges_);
    parents_.assign(n, {});
    children_.assign(n, {});
    for (const auto& e : edges_) {
        parents_[e.child].push_back(e.parent);
        children_[e.parent].push_back(e.child);
    }
    for (auto& p : parents_) std::sort(p.begin(), p.end());
}

namespace {

std::vector<Edge> resolve_edges(const std::vector<Variable>& variables, const std::vector<NamedEdge>& named) {
    auto index = [&](const std::string& name) {
        for (std::size_t i = 0; i < variables.size(); ++i) {
            if (variables[i].name == name) return i;
        }
        throw Error(ErrorCode::UnknownVariable, "edge names undeclared variable '" + name + "'");
    };
    std::vector<Edge> edges;
    edges.reserve(named.size());
    for (const auto& [p, c] : named) edges.push_back({index(p), index(c)});
    return edges;
}

}  // namespace

Dag::Dag(std::vector<Variable> variables, const std::vector<NamedEdge>& edges)
    : Dag(variables, resolve_edges(variables, edges)) {}

std::vector<NamedEdge> Dag::named_edges() const {
    std::vector<NamedEdge> out;
    out.reserve(edges_.size());
    for (const auto& e : edges_) out.emplace_back(variables_[e.parent].name, variables_[e.child].name);
    return out;
}

std::optional<std::size_t> Dag::find(std::string_view name) const {
    for (std::size_t i = 0; i < variables_.size(); ++i) {
        if (variables_[i].name == name) return i;
    }
    return std::nullopt;
}

std::size_t Dag::index_of(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw Error(ErrorCode::UnknownVariable, "unknown variable '" + std::string(name) + "'");
}

bool Dag::has_edge(std::size_t parent, std::size_t child) const {
    return std::binary_search(edges_.begin(), edges_.end(), Edge{parent, child});
}

std::vector<std::string> topological_order(const Dag& dag) {
    std::vector<std::string> names;
    names.reserve(dag.size());
    for (std::size_t i : dag.order()) names.push_back(dag.variable(i).name);
    return names;
}

}  // namespace turfbbn
