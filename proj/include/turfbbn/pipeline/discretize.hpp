#pragma once

#include "turfbbn/core/variable.hpp"
#include "turfbbn/fishery/metrics.hpp"
#include "turfbbn/infer/query.hpp"
#include "turfbbn/learn/dataset.hpp"

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace turfbbn::pipeline {

/// One management area with its paired biological state.
struct Observation {
    fishery::MaRecord record;
    fishery::PairedStateMetrics state;
};

/// Continuous value -> bin; `labels` has one more entry than `cuts`, cuts
/// strictly increase, and a value equal to a cut joins the lower bin.
struct CutRule {
    std::vector<double> cuts;
    std::vector<std::string> labels;
};

/// Cut points at the cohort's 25/50/75% quantiles (linear interpolation
/// between order statistics); four labels.
struct QuartileRule {
    std::vector<std::string> labels;
};

/// Categorical value (its text form) -> state; `states` fixes state order.
struct MappingRule {
    std::map<std::string, std::string> mapping;
    std::vector<std::string> states;
};

using DiscretizationRule = std::variant<CutRule, QuartileRule, MappingRule>;

/// Raw features available as `source`:
///   ma_surface, n_mas, distance, land_access, wave_exposure, iaoa,
///   other_activities, enforcement, effectiveness, perceived_poaching,
///   illegal_proportion, e_hat
struct VariableRule {
    std::string name;
    std::string source;
    VariableKind kind = VariableKind::Ordinal;
    DiscretizationRule rule;
};

struct DiscretizationSpec {
    std::vector<VariableRule> variables;
};

/// The twelve-node layout: ten drivers and the two responses.
DiscretizationSpec default_discretization();

/// Scales of the two response variables under default_discretization().
ResponseScale relative_size_scale();
ResponseScale illegal_proportion_scale();

std::size_t bin_index(const std::vector<double>& cuts, double value);
std::vector<double> quartile_cuts(std::vector<double> values);

/// Throws UncoveredValue when a categorical value has no mapping,
/// InvalidArgument for unknown sources or malformed rules, and RangeError
/// when quartiles of a column coincide.
DiscreteDataset discretize(const std::vector<Observation>& observations, const DiscretizationSpec& spec);

}  // namespace turfbbn::pipeline
