#include "turfbbn/learn/fit.hpp"

#include "turfbbn/error.hpp"
#include "turfbbn/learn/score.hpp"

namespace turfbbn {

Network fit_cpts(const DiscreteDataset& data, const Dag& dag, double alpha) {
    if (!(alpha >= 0.0)) throw Error(ErrorCode::InvalidArgument, "alpha must be non-negative");
    auto cols = map_columns(data, dag);

    std::vector<Cpt> cpts;
    cpts.reserve(dag.size());
    for (std::size_t v = 0; v < dag.size(); ++v) {
        const auto& parents = dag.parents(v);
        const std::size_t r = dag.variable(v).cardinality();
        std::size_t q = 1;
        for (std::size_t p : parents) q *= dag.variable(p).cardinality();

        std::vector<double> counts(q * r, 0.0);
        for (std::size_t i = 0; i < data.row_count(); ++i) {
            std::size_t config = 0;
            for (std::size_t p : parents) config = config * dag.variable(p).cardinality() + data.value(i, cols[p]);
            counts[config * r + data.value(i, cols[v])] += 1.0;
        }

        Cpt cpt;
        cpt.child = dag.variable(v).name;
        for (std::size_t p : parents) cpt.parents.push_back(dag.variable(p).name);
        cpt.rows.resize(q);
        for (std::size_t j = 0; j < q; ++j) {
            double total = 0.0;
            for (std::size_t k = 0; k < r; ++k) total += counts[j * r + k];
            const double denom = total + alpha * static_cast<double>(r);
            auto& row = cpt.rows[j];
            row.resize(r);
            for (std::size_t k = 0; k < r; ++k) {
                row[k] = denom > 0.0 ? (counts[j * r + k] + alpha) / denom : 1.0 / static_cast<double>(r);
            }
        }
        cpts.push_back(std::move(cpt));
    }
    return build_network(dag, std::move(cpts));
}

}  // namespace turfbbn
