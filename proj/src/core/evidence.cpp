#include "turfbbn/core/evidence.hpp"

#include "turfbbn/error.hpp"

#include <sstream>

namespace turfbbn {

StateConstraints& StateConstraints::add(std::string variable, std::vector<std::string> states) {
    if (states.empty()) throw Error(ErrorCode::InvalidQuery, "empty state set for '" + variable + "'");
    if (constrains(variable)) throw Error(ErrorCode::InvalidQuery, "variable '" + variable + "' constrained twice");
    clauses_.emplace_back(std::move(variable), std::move(states));
    return *this;
}

bool StateConstraints::constrains(const std::string& variable) const {
    for (const auto& c : clauses_) {
        if (c.first == variable) return true;
    }
    return false;
}

std::vector<StateMask> StateConstraints::resolve(const Dag& dag) const {
    std::vector<StateMask> masks;
    masks.reserve(dag.size());
    for (const auto& v : dag.variables()) masks.push_back(full_mask(v.cardinality()));
    for (const auto& [name, states] : clauses_) {
        std::size_t i = dag.index_of(name);
        StateMask m = 0;
        for (const auto& s : states) m |= StateMask{1} << dag.variable(i).state_index(s);
        masks[i] = m;
    }
    return masks;
}

std::string describe(const StateConstraints& constraints) {
    if (constraints.empty()) return "-";
    std::ostringstream out;
    bool first = true;
    for (const auto& [name, states] : constraints.clauses()) {
        if (!first) out << " & ";
        first = false;
        out << name << " in {";
        for (std::size_t k = 0; k < states.size(); ++k) out << (k ? ", " : "") << states[k];
        out << '}';
    }
    return out.str();
}

}  // namespace turfbbn
