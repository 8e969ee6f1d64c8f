#pragma once

#include "turfbbn/core/cpt.hpp"
#include "turfbbn/core/dag.hpp"

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace turfbbn {

/// A validated, immutable discrete Bayesian network. Instances are only
/// produced by build_network(), so every invariant holds for the lifetime
/// of the object and concurrent readers need no synchronisation.
class Network {
public:
    const Dag& dag() const noexcept { return dag_; }
    std::size_t size() const noexcept { return dag_.size(); }

    /// CPTs aligned with dag().variables().
    const std::vector<Cpt>& cpts() const noexcept { return cpts_; }
    const Cpt& cpt(std::size_t var) const { return cpts_.at(var); }
    const Cpt& cpt(std::string_view name) const { return cpts_.at(dag_.index_of(name)); }

    /// Parent indices of `var` in the CPT's column order.
    const std::vector<std::size_t>& cpt_parents(std::size_t var) const { return cpt_parents_[var]; }

    /// The CPT row of `var` selected by a full assignment (one state index
    /// per network variable; only the parents' entries are read).
    std::span<const double> row(std::size_t var, std::span<const std::size_t> assignment) const;

    std::span<const double> row_at(std::size_t var, std::size_t row_index) const {
        return cpts_[var].rows[row_index];
    }

    friend bool operator==(const Network& a, const Network& b) {
        return a.dag_ == b.dag_ && a.cpts_ == b.cpts_;
    }

private:
    friend Network build_network(Dag dag, std::vector<Cpt> cpts);
    Network(Dag dag, std::vector<Cpt> cpts);

    Dag dag_;
    std::vector<Cpt> cpts_;
    std::vector<std::vector<std::size_t>> cpt_parents_;
    std::vector<std::vector<std::size_t>> strides_;
};

/// Validates and assembles a network. CPTs may be given in any order.
/// Errors: UnknownVariable, CptShapeMismatch, RowNotNormalized.
Network build_network(Dag dag, std::vector<Cpt> cpts);

}  // namespace turfbbn
