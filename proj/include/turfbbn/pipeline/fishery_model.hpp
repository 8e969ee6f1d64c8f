#pragma once

#include "turfbbn/core/network.hpp"
#include "turfbbn/core/network_io.hpp"
#include "turfbbn/learn/search.hpp"
#include "turfbbn/pipeline/discretize.hpp"
#include "turfbbn/pipeline/scenarios.hpp"

#include <optional>
#include <string>
#include <vector>

namespace turfbbn::pipeline {

/// Drivers left out of the final network: perceived poaching (linked to
/// resource state in the unexpected direction), land access and number of
/// MAs (no link with the biological responses).
std::vector<std::string> default_excluded_variables();

/// Directed links judged plausible by domain experts: every driver may
/// influence both responses, plus the driver-to-driver mechanisms
/// (alternative activities on enforcement and OA availability, enforcement
/// on its effectiveness, geography on OA availability and distance, ...).
std::vector<NamedEdge> expert_links();

/// Forbids every ordered pair of `variables` that is not an expert link.
EdgeConstraints expert_constraints(const std::vector<Variable>& variables);

/// Variables produced by default_discretization(), in column order.
std::vector<Variable> default_variables();

/// Hand-parameterised nine-node network:
///   other_activities -> available_oa, other_activities -> enforcement,
///   ma_surface -> available_oa, available_oa -> distance,
///   wave_exposure -> distance, distance -> illegal_proportion,
///   enforcement -> effectiveness, effectiveness -> e_hat
Network reference_network();

/// The seven shipped conditional queries (Sce. 1 to Sce. 7).
std::vector<Scenario> preset_scenarios();

/// Drivers examined by reverse queries and the state groups whose
/// posterior mass is reported for each.
std::vector<ReverseDriver> reverse_drivers();

/// Relative median size above 0.59 and illegal proportion at or below 0.31.
QueryEvent default_good_state();

struct LearnOptions {
    SearchConfig search;
    double alpha = 1.0;
    std::optional<EdgeConstraints> constraints;  // expert_constraints() when empty
    bool use_expert_constraints = true;
    std::vector<std::string> excluded = default_excluded_variables();
    DiscretizationSpec discretization = default_discretization();
};

struct LearnResult {
    std::vector<Observation> observations;
    DiscreteDataset full_dataset;
    DiscreteDataset dataset;  // after exclusions
    ScoredDag structure;
    Network network;
    EdgeStrengths strengths;
};

/// Field records -> paired state metrics -> discretisation -> exclusions ->
/// tabu search -> CPT fitting.
LearnResult learn_pipeline(const std::vector<fishery::MaRecord>& records,
                           const std::vector<fishery::SizeSample>& samples, const LearnOptions& options);

}  // namespace turfbbn::pipeline
