#include "turfbbn/learn/dataset.hpp"

#include "turfbbn/error.hpp"

#include <algorithm>
#include <set>

namespace turfbbn {

DiscreteDataset::DiscreteDataset(std::vector<Variable> variables, const std::vector<std::vector<std::size_t>>& rows)
    : variables_(std::move(variables)), columns_(variables_.size()), row_count_(rows.size()) {
    if (variables_.size() > 64) throw Error(ErrorCode::InvalidArgument, "at most 64 variables are supported");
    std::set<std::string_view> names;
    for (const auto& v : variables_) {
        v.validate();
        if (!names.insert(v.name).second) throw Error(ErrorCode::InvalidVariable, "duplicate column '" + v.name + "'");
    }
    for (auto& c : columns_) c.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != variables_.size()) {
            throw Error(ErrorCode::InvalidArgument, "row " + std::to_string(i) + " has the wrong number of values");
        }
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            if (rows[i][j] >= variables_[j].cardinality()) {
                throw Error(ErrorCode::InvalidArgument,
                            "row " + std::to_string(i) + ": state index out of range for '" + variables_[j].name + "'");
            }
            columns_[j].push_back(static_cast<std::uint8_t>(rows[i][j]));
        }
    }
}

std::vector<std::size_t> DiscreteDataset::row(std::size_t i) const {
    std::vector<std::size_t> r(variables_.size());
    for (std::size_t j = 0; j < variables_.size(); ++j) r[j] = columns_[j].at(i);
    return r;
}

std::optional<std::size_t> DiscreteDataset::find(std::string_view name) const {
    for (std::size_t j = 0; j < variables_.size(); ++j) {
        if (variables_[j].name == name) return j;
    }
    return std::nullopt;
}

std::size_t DiscreteDataset::index_of(std::string_view name) const {
    if (auto j = find(name)) return *j;
    throw Error(ErrorCode::UnknownVariable, "dataset has no variable '" + std::string(name) + "'");
}

void DiscreteDataset::require_rows() const {
    if (row_count_ == 0) throw Error(ErrorCode::EmptyDataset, "dataset has no rows");
}

DiscreteDataset drop_variables(const DiscreteDataset& dataset, const std::vector<std::string>& names) {
    std::vector<bool> keep(dataset.variable_count(), true);
    for (const auto& n : names) keep[dataset.index_of(n)] = false;

    std::vector<Variable> variables;
    for (std::size_t j = 0; j < keep.size(); ++j) {
        if (keep[j]) variables.push_back(dataset.variable(j));
    }
    std::vector<std::vector<std::size_t>> rows(dataset.row_count());
    for (std::size_t i = 0; i < dataset.row_count(); ++i) {
        for (std::size_t j = 0; j < keep.size(); ++j) {
            if (keep[j]) rows[i].push_back(dataset.value(i, j));
        }
    }
    return DiscreteDataset(std::move(variables), rows);
}

}  // namespace turfbbn
