#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace turfbbn {

enum class VariableKind { Ordinal, Nominal };

std::string_view to_string(VariableKind kind) noexcept;
VariableKind parse_variable_kind(std::string_view text);

// States are addressed by index everywhere below the API surface; a state
// mask is a 64-bit set, so cardinality is capped at 64.
inline constexpr std::size_t kMaxStates = 64;

struct Variable {
    std::string name;
    std::vector<std::string> states;
    VariableKind kind = VariableKind::Nominal;

    std::size_t cardinality() const noexcept { return states.size(); }

    /// Throws UnknownState when the label is not one of the states.
    std::size_t state_index(std::string_view label) const;

    /// Throws InvalidVariable on an empty name, fewer than two states,
    /// duplicate labels, or more than kMaxStates states.
    void validate() const;

    friend bool operator==(const Variable&, const Variable&) = default;
};

}  // namespace turfbbn
