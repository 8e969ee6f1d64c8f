#pragma once

#include "turfbbn/learn/score.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace turfbbn {

struct EdgeConstraints {
    std::vector<NamedEdge> required;
    std::vector<NamedEdge> forbidden;
};

/// Parses `require a -> b` / `forbid a -> b` lines; `#` starts a comment.
/// Throws ParseError with the offending line number.
EdgeConstraints parse_constraints(std::string_view text);
std::string format_constraints(const EdgeConstraints& constraints);

struct SearchConfig {
    std::size_t max_iterations = 200;
    std::size_t tabu_list_length = 10;
    std::size_t max_parents = 4;
    std::size_t restarts = 5;
    std::uint64_t seed = 0;
    std::vector<NamedEdge> required_edges;
    std::vector<NamedEdge> forbidden_edges;

    /// Throws InvalidConfig.
    void validate() const;
};

/// Tabu search over DAG space from the required-edge DAG (empty when none),
/// followed by `restarts` runs from seeded random perturbations of it. Each
/// iteration applies the best admissible add/delete/reverse move, even when
/// it lowers the score; moves that undo one of the last `tabu_list_length`
/// moves are skipped unless they beat the best score seen. Only the one or
/// two families touched by a move are rescored.
///
/// Ties are broken by fewer edges, then lexicographically smaller edge list.
/// Throws EmptyDataset, InvalidConfig, UnknownVariable, InfeasibleConstraints.
ScoredDag tabu_search(const DiscreteDataset& data, const SearchConfig& config,
                      const ScoreFunction& score = default_score());

/// Every labelled DAG on `n` nodes as a sorted edge list (n <= 5).
std::vector<std::vector<Edge>> enumerate_dags(std::size_t n);

/// Best-scoring DAG by full enumeration; same tie rule as tabu_search.
/// Throws TooManyVariables when the dataset has more than `max_vars`
/// columns or `max_vars` exceeds 5.
ScoredDag exhaustive_search(const DiscreteDataset& data, std::size_t max_vars = 5,
                            const ScoreFunction& score = default_score());

/// True when (score_a, edges_a) should be preferred over (score_b, edges_b).
bool prefer(double score_a, const std::vector<Edge>& edges_a, double score_b, const std::vector<Edge>& edges_b);

}  // namespace turfbbn
