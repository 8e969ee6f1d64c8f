#include "turfbbn/core/variable.hpp"

#include "turfbbn/error.hpp"

#include <algorithm>
#include <set>

namespace turfbbn {

std::string_view to_string(VariableKind kind) noexcept {
    return kind == VariableKind::Ordinal ? "ordinal" : "nominal";
}

VariableKind parse_variable_kind(std::string_view text) {
    if (text == "ordinal") return VariableKind::Ordinal;
    if (text == "nominal") return VariableKind::Nominal;
    throw Error(ErrorCode::InvalidVariable, "unknown variable kind '" + std::string(text) + "'");
}

std::size_t Variable::state_index(std::string_view label) const {
    auto it = std::find(states.begin(), states.end(), label);
    if (it == states.end()) {
        throw Error(ErrorCode::UnknownState,
                    "variable '" + name + "' has no state '" + std::string(label) + "'");
    }
    return static_cast<std::size_t>(it - states.begin());
}

void Variable::validate() const {
    if (name.empty()) throw Error(ErrorCode::InvalidVariable, "variable with empty name");
    if (states.size() < 2) {
        throw Error(ErrorCode::InvalidVariable, "variable '" + name + "' needs at least two states");
    }
    if (states.size() > kMaxStates) {
        throw Error(ErrorCode::InvalidVariable, "variable '" + name + "' has more than 64 states");
    }
    std::set<std::string_view> seen;
    for (const auto& s : states) {
        if (s.empty()) throw Error(ErrorCode::InvalidVariable, "variable '" + name + "' has an empty state label");
        if (!seen.insert(s).second) {
            throw Error(ErrorCode::InvalidVariable, "variable '" + name + "' repeats state '" + s + "'");
        }
    }
}

}  // namespace turfbbn
