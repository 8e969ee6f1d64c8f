#include "turfbbn/pipeline/discretize.hpp"

#include "turfbbn/error.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace turfbbn::pipeline {

using namespace turfbbn::fishery;

namespace {

const std::vector<std::string> kLevels4 = {"low", "moderate", "high", "very_high"};
const std::vector<std::string> kLevels5 = {"very_low", "low", "moderate", "high", "very_high"};

MappingRule ordinal_mapping(const std::vector<std::string>& raw, const std::vector<std::string>& states) {
    MappingRule m;
    for (std::size_t k = 0; k < raw.size(); ++k) m.mapping[raw[k]] = states[k];
    m.states = states;
    return m;
}

struct RawValue {
    std::optional<double> number;
    std::string text;
};

RawValue raw_feature(const Observation& o, const std::string& source, std::size_t mas_in_cove) {
    const MaRecord& r = o.record;
    auto num = [](double v) { return RawValue{v, {}}; };
    auto count = [](long v) { return RawValue{static_cast<double>(v), std::to_string(v)}; };
    if (source == "ma_surface") return num(r.ma_surface_km2);
    if (source == "n_mas") return count(static_cast<long>(mas_in_cove));
    if (source == "distance") return num(r.distance_km);
    if (source == "land_access") return {std::nullopt, r.land_access == LandAccess::Easy ? "easy" : "difficult"};
    if (source == "wave_exposure") return {std::nullopt, r.wave_exposure == WaveExposure::ExposedSouth ? "S" : "N"};
    if (source == "iaoa") return num(r.iaoa);
    if (source == "other_activities") return {std::nullopt, r.other_activities ? "Y" : "N"};
    if (source == "enforcement") return count(r.enforcement.rank);
    if (source == "effectiveness") return count(r.enforcement.effective_rank);
    if (source == "perceived_poaching") return count(r.perceived_poaching);
    if (source == "illegal_proportion") return num(o.state.illegal_proportion_ma);
    if (source == "e_hat") return num(o.state.e_hat);
    throw Error(ErrorCode::InvalidArgument, "unknown raw feature '" + source + "'");
}

void check_cuts(const std::string& name, const std::vector<double>& cuts, std::size_t labels) {
    if (labels != cuts.size() + 1) {
        throw Error(ErrorCode::InvalidArgument, "rule for '" + name + "' needs one more label than cut points");
    }
    for (std::size_t k = 1; k < cuts.size(); ++k) {
        if (!(cuts[k] > cuts[k - 1])) {
            throw Error(ErrorCode::RangeError, "cut points of '" + name + "' are not strictly increasing");
        }
    }
}

}  // namespace

DiscretizationSpec default_discretization() {
    DiscretizationSpec spec;
    auto& v = spec.variables;
    v.push_back({"ma_surface", "ma_surface", VariableKind::Ordinal, QuartileRule{kLevels4}});
    v.push_back({"n_mas", "n_mas", VariableKind::Ordinal, ordinal_mapping({"1", "2", "3"}, {"one", "two", "three"})});
    v.push_back({"distance", "distance", VariableKind::Ordinal, QuartileRule{{"close", "moderate", "far", "very_far"}}});
    v.push_back({"land_access", "land_access", VariableKind::Nominal,
                 ordinal_mapping({"easy", "difficult"}, {"easy", "difficult"})});
    v.push_back({"wave_exposure", "wave_exposure", VariableKind::Nominal,
                 ordinal_mapping({"S", "N"}, {"exposed", "protected"})});
    v.push_back({"available_oa", "iaoa", VariableKind::Ordinal, QuartileRule{kLevels4}});
    v.push_back({"other_activities", "other_activities", VariableKind::Nominal, ordinal_mapping({"N", "Y"}, {"N", "Y"})});
    // Rank 1 (no surveillance) does not occur in the study cohort, so the
    // formal enforcement node has four levels.
    v.push_back({"enforcement", "enforcement", VariableKind::Ordinal, ordinal_mapping({"2", "3", "4", "5"}, kLevels4)});
    v.push_back({"effectiveness", "effectiveness", VariableKind::Ordinal,
                 ordinal_mapping({"1", "2", "3", "4", "5"}, kLevels5)});
    v.push_back({"perceived_poaching", "perceived_poaching", VariableKind::Ordinal,
                 ordinal_mapping({"1", "2", "3", "4"}, kLevels4)});
    const auto illegal = illegal_proportion_scale();
    v.push_back({illegal.variable, "illegal_proportion", VariableKind::Ordinal, CutRule{illegal.cuts, illegal.labels}});
    const auto size = relative_size_scale();
    v.push_back({size.variable, "e_hat", VariableKind::Ordinal, CutRule{size.cuts, size.labels}});
    return spec;
}

ResponseScale relative_size_scale() { return {"e_hat", {0.5, 0.59}, {"le_0.5", "le_0.59", "gt_0.59"}}; }

ResponseScale illegal_proportion_scale() {
    return {"illegal_proportion", {0.15, 0.31}, {"le_0.15", "le_0.31", "gt_0.31"}};
}

std::size_t bin_index(const std::vector<double>& cuts, double value) {
    return static_cast<std::size_t>(std::lower_bound(cuts.begin(), cuts.end(), value) - cuts.begin());
}

std::vector<double> quartile_cuts(std::vector<double> values) {
    if (values.empty()) throw Error(ErrorCode::EmptySample, "quartiles of an empty column");
    std::sort(values.begin(), values.end());
    std::vector<double> cuts;
    for (double q : {0.25, 0.5, 0.75}) {
        const double h = q * static_cast<double>(values.size() - 1);
        const auto lo = static_cast<std::size_t>(std::floor(h));
        const std::size_t hi = std::min(lo + 1, values.size() - 1);
        cuts.push_back(values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]));
    }
    return cuts;
}

DiscreteDataset discretize(const std::vector<Observation>& observations, const DiscretizationSpec& spec) {
    std::map<std::string, std::size_t> mas_per_cove;
    for (const auto& o : observations) ++mas_per_cove[o.record.cove];

    const std::size_t n = observations.size();
    std::vector<Variable> variables;
    std::vector<std::vector<std::size_t>> rows(n, std::vector<std::size_t>(spec.variables.size()));

    for (std::size_t j = 0; j < spec.variables.size(); ++j) {
        const VariableRule& vr = spec.variables[j];
        std::vector<RawValue> raw;
        raw.reserve(n);
        for (const auto& o : observations) raw.push_back(raw_feature(o, vr.source, mas_per_cove[o.record.cove]));

        auto numbers = [&] {
            std::vector<double> out;
            for (const auto& r : raw) {
                if (!r.number) throw Error(ErrorCode::InvalidArgument, "feature '" + vr.source + "' is not numeric");
                out.push_back(*r.number);
            }
            return out;
        };
        auto apply_cuts = [&](const std::vector<double>& cuts, const std::vector<std::string>& labels) {
            check_cuts(vr.name, cuts, labels.size());
            auto values = numbers();
            for (std::size_t i = 0; i < n; ++i) rows[i][j] = bin_index(cuts, values[i]);
            variables.push_back({vr.name, labels, vr.kind});
        };

        if (const auto* cut = std::get_if<CutRule>(&vr.rule)) {
            apply_cuts(cut->cuts, cut->labels);
        } else if (const auto* quart = std::get_if<QuartileRule>(&vr.rule)) {
            if (quart->labels.size() != 4) throw Error(ErrorCode::InvalidArgument, "quartile rule needs four labels");
            apply_cuts(quartile_cuts(numbers()), quart->labels);
        } else {
            const auto& map = std::get<MappingRule>(vr.rule);
            Variable var{vr.name, map.states, vr.kind};
            for (std::size_t i = 0; i < n; ++i) {
                auto it = map.mapping.find(raw[i].text);
                if (it == map.mapping.end()) {
                    throw Error(ErrorCode::UncoveredValue, "value '" + raw[i].text + "' of '" + vr.name + "' (" +
                                                               observations[i].record.cove + "/" +
                                                               observations[i].record.ma_id + ") has no state");
                }
                rows[i][j] = var.state_index(it->second);
            }
            variables.push_back(std::move(var));
        }
    }
    return DiscreteDataset(std::move(variables), rows);
}

}  // namespace turfbbn::pipeline
