#pragma once

#include "turfbbn/core/variable.hpp"

#include <span>
#include <string>
#include <vector>

namespace turfbbn {

inline constexpr double kRowTolerance = 1e-9;

/// Conditional probability table. `rows[k]` is the distribution over the
/// child's states for the k-th parent combination in row-major order (last
/// parent varying fastest); see parent_combinations().
struct Cpt {
    std::string child;
    std::vector<std::string> parents;
    std::vector<std::vector<double>> rows;

    friend bool operator==(const Cpt&, const Cpt&) = default;
};

/// Row-major enumeration of parent state labels, last parent fastest.
/// No parents yields a single empty tuple.
std::vector<std::vector<std::string>> parent_combinations(std::span<const Variable> parents);

}  // namespace turfbbn
