#pragma once

#include "turfbbn/core/evidence.hpp"
#include "turfbbn/core/network.hpp"
#include "turfbbn/infer/query.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace turfbbn::pipeline {

inline constexpr std::size_t kDefaultScenarioSamples = 2000;

struct Scenario {
    std::string name;
    Evidence evidence;
    QueryEvent event;
    std::size_t n_samples = kDefaultScenarioSamples;
    std::optional<std::uint64_t> seed;  // defaults to base seed + position

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Scenario documents:
///
///   # comment
///   scenario Sce. 2
///     given available_oa in {very_high, high}
///     given distance in {close}
///     event illegal_proportion in {le_0.15, le_0.31}
///     samples 2000
///     seed 7
///
/// A block runs until the next `scenario` line. Throws ParseError with the
/// line number.
std::vector<Scenario> parse_scenarios(std::string_view text);
std::string format_scenarios(const std::vector<Scenario>& scenarios);

/// `var in {a, b}` -> clause. Throws ParseError.
StateConstraints::Clause parse_clause(std::string_view text);

struct ScenarioRow {
    std::string name;
    std::string variable_1;
    std::string variable_2;
    std::string response;
    std::optional<QueryResult> sampled;
    std::optional<double> exact;
    std::optional<std::string> error;

    /// False when the exact cross-check falls outside the sampler interval.
    bool exact_within_ci() const;
};

struct ScenarioReport {
    std::vector<ScenarioRow> rows;
    bool has_errors() const;
};

/// Likelihood-weighted estimate and exact cross-check for each scenario.
/// Scenario errors are recorded on their row; later scenarios still run.
ScenarioReport run_scenarios(const Network& network, const std::vector<Scenario>& scenarios,
                             std::uint64_t base_seed = 1);

std::string format_report_text(const ScenarioReport& report);
std::string format_report_tsv(const ScenarioReport& report);

struct ReverseDriver {
    std::string name;
    std::vector<std::string> highlight;  // state group whose mass is reported
};

struct ReverseRow {
    DriverDistribution distribution;
    std::vector<std::string> highlight;
    double highlight_mass = 0.0;
};

struct ReverseReport {
    std::string response;
    std::vector<ReverseRow> rows;
};

ReverseReport run_reverse_scenarios(const Network& network, const std::vector<ReverseDriver>& drivers,
                                    const QueryEvent& response);
std::string format_reverse_text(const ReverseReport& report);

}  // namespace turfbbn::pipeline
