#pragma once

#include "turfbbn/core/dag.hpp"
#include "turfbbn/core/network_io.hpp"
#include "turfbbn/learn/dataset.hpp"

#include <cstdint>
#include <map>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace turfbbn {

/// Decomposable network score: the score of a DAG is the sum of one term per
/// (child, parent set) family.
class ScoreFunction {
public:
    virtual ~ScoreFunction() = default;
    virtual double family(const DiscreteDataset& data, std::size_t child, std::span<const std::size_t> parents) const = 0;
};

/// Bayesian information criterion:
///   sum_jk N_jk ln(N_jk / N_j)  -  0.5 ln(N) q (r - 1)
class BicScore final : public ScoreFunction {
public:
    double family(const DiscreteDataset& data, std::size_t child, std::span<const std::size_t> parents) const override;
};

const ScoreFunction& default_score();

/// BIC family score by variable name. Throws UnknownVariable, EmptyDataset,
/// and InvalidArgument when the child is among its parents.
double family_score(const DiscreteDataset& data, std::string_view child, const std::vector<std::string>& parents);

using ParentSet = std::uint64_t;

/// Memoised family scores keyed by (child, parent bitset). Lookups take a
/// shared lock and inserts a unique one, so concurrent search threads can
/// share one cache.
class FamilyScoreCache {
public:
    FamilyScoreCache(const DiscreteDataset& data, const ScoreFunction& score)
        : data_(data), score_(score), cache_(data.variable_count()) {}

    double score(std::size_t child, ParentSet parents);
    std::size_t size() const;

private:
    const DiscreteDataset& data_;
    const ScoreFunction& score_;
    mutable std::shared_mutex mutex_;
    std::vector<std::unordered_map<ParentSet, double>> cache_;
};

struct ScoredDag {
    Dag dag;
    double total_score = 0.0;
    std::map<std::string, double> family_scores;
};

/// The DAG's variables must be dataset columns (matched by name, identical
/// states). Throws UnknownVariable, EmptyDataset, InvalidArgument.
ScoredDag score_dag(const DiscreteDataset& data, const Dag& dag, const ScoreFunction& score = default_score());

/// Family-score gain at the child from keeping `edge` versus dropping it.
/// Throws UnknownEdge when the edge is not in the DAG.
double edge_strength(const DiscreteDataset& data, const Dag& dag, const NamedEdge& edge,
                     const ScoreFunction& score = default_score());

EdgeStrengths edge_strengths(const DiscreteDataset& data, const Dag& dag, const ScoreFunction& score = default_score());

/// Dataset column index for every DAG variable; validates names and states.
std::vector<std::size_t> map_columns(const DiscreteDataset& data, const Dag& dag);

}  // namespace turfbbn
