#pragma once

#include "turfbbn/core/dag.hpp"

#include <cstdint>
#include <utility>
#include <string>
#include <vector>

namespace turfbbn {

using StateMask = std::uint64_t;

inline StateMask full_mask(std::size_t cardinality) {
    return cardinality >= 64 ? ~StateMask{0} : (StateMask{1} << cardinality) - 1;
}

/// Variable -> allowed subset of its states, kept in insertion order. Each
/// variable appears once and each subset is non-empty.
class StateConstraints {
public:
    /// Throws InvalidQuery on a repeated variable or an empty state list.
    StateConstraints& add(std::string variable, std::vector<std::string> states);

    using Clause = std::pair<std::string, std::vector<std::string>>;

    const std::vector<Clause>& clauses() const noexcept { return clauses_; }
    bool empty() const noexcept { return clauses_.empty(); }
    bool constrains(const std::string& variable) const;

    /// One mask per DAG variable; unconstrained variables get the full mask.
    /// Throws UnknownVariable / UnknownState.
    std::vector<StateMask> resolve(const Dag& dag) const;

    friend bool operator==(const StateConstraints&, const StateConstraints&) = default;

private:
    std::vector<Clause> clauses_;
};

class Evidence : public StateConstraints {
public:
    Evidence() = default;
    explicit Evidence(StateConstraints base) : StateConstraints(std::move(base)) {}
};

class QueryEvent : public StateConstraints {
public:
    QueryEvent() = default;
    explicit QueryEvent(StateConstraints base) : StateConstraints(std::move(base)) {}
};

/// Human-readable `var in {a, b} & ...` rendering; "-" when empty.
std::string describe(const StateConstraints& constraints);

}  // namespace turfbbn
