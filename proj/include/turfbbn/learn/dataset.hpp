#pragma once

#include "turfbbn/core/variable.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace turfbbn {

/// Complete categorical observations, stored column-major as state indices.
/// A dataset may hold zero rows; learners reject it with EmptyDataset.
class DiscreteDataset {
public:
    /// `rows[i][j]` is the state index of variable j in observation i.
    /// Throws InvalidArgument on ragged rows or out-of-range indices.
    DiscreteDataset(std::vector<Variable> variables, const std::vector<std::vector<std::size_t>>& rows);

    std::size_t variable_count() const noexcept { return variables_.size(); }
    std::size_t row_count() const noexcept { return row_count_; }
    const std::vector<Variable>& variables() const noexcept { return variables_; }
    const Variable& variable(std::size_t j) const { return variables_.at(j); }

    std::size_t value(std::size_t row, std::size_t var) const { return columns_[var][row]; }
    const std::vector<std::uint8_t>& column(std::size_t var) const { return columns_.at(var); }
    std::vector<std::size_t> row(std::size_t i) const;

    std::optional<std::size_t> find(std::string_view name) const;
    /// Throws UnknownVariable.
    std::size_t index_of(std::string_view name) const;

    /// Throws EmptyDataset when there are no rows.
    void require_rows() const;

    friend bool operator==(const DiscreteDataset&, const DiscreteDataset&) = default;

private:
    std::vector<Variable> variables_;
    std::vector<std::vector<std::uint8_t>> columns_;
    std::size_t row_count_ = 0;
};

/// Copy without the named columns. Throws UnknownVariable.
DiscreteDataset drop_variables(const DiscreteDataset& dataset, const std::vector<std::string>& names);

}  // namespace turfbbn
