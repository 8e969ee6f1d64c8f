#include "turfbbn/core/network.hpp"

#include "turfbbn/error.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>

namespace turfbbn {

Network::Network(Dag dag, std::vector<Cpt> cpts) : dag_(std::move(dag)), cpts_(std::move(cpts)) {
    const std::size_t n = dag_.size();
    cpt_parents_.resize(n);
    strides_.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        const auto& parents = cpts_[v].parents;
        auto& idx = cpt_parents_[v];
        auto& stride = strides_[v];
        idx.resize(parents.size());
        stride.resize(parents.size());
        std::size_t s = 1;
        for (std::size_t k = parents.size(); k-- > 0;) {
            idx[k] = dag_.index_of(parents[k]);
            stride[k] = s;
            s *= dag_.variable(idx[k]).cardinality();
        }
    }
}

std::span<const double> Network::row(std::size_t var, std::span<const std::size_t> assignment) const {
    std::size_t r = 0;
    const auto& idx = cpt_parents_[var];
    const auto& stride = strides_[var];
    for (std::size_t k = 0; k < idx.size(); ++k) r += assignment[idx[k]] * stride[k];
    return cpts_[var].rows[r];
}

Network build_network(Dag dag, std::vector<Cpt> cpts) {
    const std::size_t n = dag.size();
    std::vector<std::optional<Cpt>> slots(n);
    for (auto& cpt : cpts) {
        std::size_t v = dag.index_of(cpt.child);
        if (slots[v]) throw Error(ErrorCode::CptShapeMismatch, "two CPTs for '" + cpt.child + "'");
        slots[v] = std::move(cpt);
    }
    std::vector<Cpt> ordered;
    ordered.reserve(n);
    for (std::size_t v = 0; v < n; ++v) {
        const auto& var = dag.variable(v);
        if (!slots[v]) throw Error(ErrorCode::CptShapeMismatch, "no CPT for '" + var.name + "'");
        Cpt& cpt = *slots[v];

        std::set<std::size_t> cpt_parents;
        std::size_t row_count = 1;
        for (const auto& p : cpt.parents) {
            std::size_t pi = dag.index_of(p);
            if (!cpt_parents.insert(pi).second) {
                throw Error(ErrorCode::CptShapeMismatch, "CPT of '" + var.name + "' repeats parent '" + p + "'");
            }
            row_count *= dag.variable(pi).cardinality();
        }
        const auto& dag_parents = dag.parents(v);
        if (!std::equal(cpt_parents.begin(), cpt_parents.end(), dag_parents.begin(), dag_parents.end())) {
            throw Error(ErrorCode::CptShapeMismatch, "CPT parents of '" + var.name + "' disagree with the DAG");
        }
        if (cpt.rows.size() != row_count) {
            throw Error(ErrorCode::CptShapeMismatch, "CPT of '" + var.name + "' has " + std::to_string(cpt.rows.size()) +
                                                         " rows, expected " + std::to_string(row_count));
        }
        for (std::size_t r = 0; r < cpt.rows.size(); ++r) {
            const auto& row = cpt.rows[r];
            if (row.size() != var.cardinality()) {
                throw Error(ErrorCode::CptShapeMismatch,
                            "CPT row " + std::to_string(r) + " of '" + var.name + "' has wrong length");
            }
            double sum = 0.0;
            for (double p : row) {
                if (!(p >= 0.0 && p <= 1.0)) {
                    throw Error(ErrorCode::RowNotNormalized,
                                "CPT row " + std::to_string(r) + " of '" + var.name + "' has a probability outside [0,1]");
                }
                sum += p;
            }
            if (std::abs(sum - 1.0) > kRowTolerance) {
                throw Error(ErrorCode::RowNotNormalized,
                            "CPT row " + std::to_string(r) + " of '" + var.name + "' sums to " + std::to_string(sum));
            }
        }
        ordered.push_back(std::move(cpt));
    }
    return Network(std::move(dag), std::move(ordered));
}

}  // namespace turfbbn
