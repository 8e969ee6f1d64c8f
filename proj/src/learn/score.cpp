#include "turfbbn/learn/score.hpp"

#include "turfbbn/error.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <optional>

namespace turfbbn {

double BicScore::family(const DiscreteDataset& data, std::size_t child, std::span<const std::size_t> parents) const {
    data.require_rows();
    const std::size_t r = data.variable(child).cardinality();
    std::size_t q = 1;
    for (std::size_t p : parents) q *= data.variable(p).cardinality();

    std::vector<std::size_t> counts(q * r, 0);
    const auto& child_col = data.column(child);
    for (std::size_t i = 0; i < data.row_count(); ++i) {
        std::size_t config = 0;
        for (std::size_t p : parents) config = config * data.variable(p).cardinality() + data.value(i, p);
        ++counts[config * r + child_col[i]];
    }

    double loglik = 0.0;
    for (std::size_t j = 0; j < q; ++j) {
        std::size_t n_j = 0;
        for (std::size_t k = 0; k < r; ++k) n_j += counts[j * r + k];
        if (n_j == 0) continue;
        for (std::size_t k = 0; k < r; ++k) {
            std::size_t n_jk = counts[j * r + k];
            if (n_jk > 0) loglik += static_cast<double>(n_jk) * std::log(static_cast<double>(n_jk) / static_cast<double>(n_j));
        }
    }
    const double penalty = 0.5 * std::log(static_cast<double>(data.row_count())) * static_cast<double>(q * (r - 1));
    return loglik - penalty;
}

const ScoreFunction& default_score() {
    static const BicScore bic;
    return bic;
}

double family_score(const DiscreteDataset& data, std::string_view child, const std::vector<std::string>& parents) {
    std::size_t c = data.index_of(child);
    std::vector<std::size_t> p;
    for (const auto& name : parents) {
        std::size_t j = data.index_of(name);
        if (j == c) throw Error(ErrorCode::InvalidArgument, "'" + std::string(child) + "' cannot be its own parent");
        p.push_back(j);
    }
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    return default_score().family(data, c, p);
}

double FamilyScoreCache::score(std::size_t child, ParentSet parents) {
    {
        std::shared_lock lock(mutex_);
        auto it = cache_[child].find(parents);
        if (it != cache_[child].end()) return it->second;
    }
    std::vector<std::size_t> p;
    for (std::size_t j = 0; j < data_.variable_count(); ++j) {
        if (parents >> j & 1U) p.push_back(j);
    }
    double s = score_.family(data_, child, p);
    std::unique_lock lock(mutex_);
    cache_[child].emplace(parents, s);
    return s;
}

std::size_t FamilyScoreCache::size() const {
    std::shared_lock lock(mutex_);
    std::size_t n = 0;
    for (const auto& m : cache_) n += m.size();
    return n;
}

std::vector<std::size_t> map_columns(const DiscreteDataset& data, const Dag& dag) {
    std::vector<std::size_t> cols;
    cols.reserve(dag.size());
    for (const auto& v : dag.variables()) {
        std::size_t j = data.index_of(v.name);
        if (data.variable(j).states != v.states) {
            throw Error(ErrorCode::InvalidArgument, "states of '" + v.name + "' differ between DAG and dataset");
        }
        cols.push_back(j);
    }
    return cols;
}

namespace {

double family_in_dag(const DiscreteDataset& data, const std::vector<std::size_t>& cols, const Dag& dag,
                     std::size_t v, std::optional<std::size_t> without, const ScoreFunction& score) {
    std::vector<std::size_t> parents;
    for (std::size_t p : dag.parents(v)) {
        if (without && p == *without) continue;
        parents.push_back(cols[p]);
    }
    std::sort(parents.begin(), parents.end());
    return score.family(data, cols[v], parents);
}

}  // namespace

ScoredDag score_dag(const DiscreteDataset& data, const Dag& dag, const ScoreFunction& score) {
    data.require_rows();
    auto cols = map_columns(data, dag);
    ScoredDag out{dag, 0.0, {}};
    for (std::size_t v = 0; v < dag.size(); ++v) {
        double s = family_in_dag(data, cols, dag, v, std::nullopt, score);
        out.family_scores[dag.variable(v).name] = s;
        out.total_score += s;
    }
    return out;
}

double edge_strength(const DiscreteDataset& data, const Dag& dag, const NamedEdge& edge, const ScoreFunction& score) {
    std::size_t p = dag.index_of(edge.first);
    std::size_t c = dag.index_of(edge.second);
    if (!dag.has_edge(p, c)) throw Error(ErrorCode::UnknownEdge, edge.first + " -> " + edge.second);
    data.require_rows();
    auto cols = map_columns(data, dag);
    return family_in_dag(data, cols, dag, c, std::nullopt, score) - family_in_dag(data, cols, dag, c, p, score);
}

EdgeStrengths edge_strengths(const DiscreteDataset& data, const Dag& dag, const ScoreFunction& score) {
    EdgeStrengths out;
    for (const auto& e : dag.named_edges()) out[e] = edge_strength(data, dag, e, score);
    return out;
}

}  // namespace turfbbn
