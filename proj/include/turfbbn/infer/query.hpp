#pragma once

#include "turfbbn/core/evidence.hpp"
#include "turfbbn/core/network.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace turfbbn {

enum class QueryMethod { Exact, LikelihoodWeighting };

std::string_view to_string(QueryMethod method) noexcept;

struct QueryResult {
    double estimate = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::size_t n_samples = 0;
    QueryMethod method = QueryMethod::Exact;
};

inline constexpr std::size_t kExactNodeLimit = 20;

/// P(event | evidence) by enumerating the joint over the ancestors of the
/// constrained variables in topological order, pruning zero-mass branches.
/// Throws InvalidQuery (empty event, more than kExactNodeLimit relevant
/// nodes), UnknownVariable, UnknownState, ZeroProbabilityEvidence.
QueryResult exact_query(const Network& network, const QueryEvent& event, const Evidence& evidence);

/// Likelihood weighting. Evidence variables are clamped to their allowed
/// subset: the state is drawn from the CPT row renormalised over the subset
/// and the sample weight is multiplied by the subset's row mass. The 95%
/// interval is a normal approximation on the weighted ratio estimator.
/// Deterministic for a given seed. Throws AllZeroWeights when every sample
/// carries zero weight.
QueryResult lw_query(const Network& network, const QueryEvent& event, const Evidence& evidence, std::size_t n,
                     std::uint64_t seed);

struct DriverDistribution {
    std::string driver;
    std::vector<std::string> states;
    std::vector<double> probabilities;

    /// Summed probability of the listed states. Throws UnknownState.
    double mass(const std::vector<std::string>& group) const;
};

/// P(driver = s | response) for every state s of the driver.
/// Throws InvalidQuery when the response constrains the driver itself.
DriverDistribution reverse_query(const Network& network, std::string_view driver, const QueryEvent& response);

/// Cut points and state labels of a discretised response variable; labels
/// has one more entry than cuts and a value equal to a cut joins the lower bin.
struct ResponseScale {
    std::string variable;
    std::vector<double> cuts;
    std::vector<std::string> labels;
};

struct GoodStateThresholds {
    double relative_size_above = 0.59;
    double illegal_below = 0.31;
};

/// The compound "good resource state" event: relative median size above its
/// threshold and illegal proportion at or below its threshold. Both
/// thresholds must be cut points of their scales (ThresholdNotACutPoint).
QueryEvent good_state_event(const ResponseScale& relative_size, const ResponseScale& illegal,
                            const GoodStateThresholds& thresholds = {});

}  // namespace turfbbn
