#include "turfbbn/pipeline/fishery_model.hpp"

#include "turfbbn/error.hpp"
#include "turfbbn/learn/fit.hpp"
#include "turfbbn/pipeline/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace turfbbn::pipeline {

std::vector<std::string> default_excluded_variables() { return {"perceived_poaching", "land_access", "n_mas"}; }

std::vector<NamedEdge> expert_links() {
    const std::vector<std::string> drivers = {"ma_surface",       "n_mas",       "distance",      "land_access",
                                              "wave_exposure",    "available_oa", "other_activities",
                                              "enforcement",      "effectiveness", "perceived_poaching"};
    std::vector<NamedEdge> links;
    for (const auto& d : drivers) {
        links.emplace_back(d, "illegal_proportion");
        links.emplace_back(d, "e_hat");
    }
    const std::vector<NamedEdge> mechanisms = {
        {"other_activities", "enforcement"},   {"other_activities", "available_oa"},
        {"other_activities", "perceived_poaching"},
        {"enforcement", "effectiveness"},      {"n_mas", "effectiveness"},
        {"ma_surface", "effectiveness"},       {"distance", "effectiveness"},
        {"enforcement", "perceived_poaching"}, {"effectiveness", "perceived_poaching"},
        {"land_access", "perceived_poaching"}, {"wave_exposure", "perceived_poaching"},
        {"ma_surface", "available_oa"},        {"n_mas", "available_oa"},
        {"available_oa", "distance"},          {"wave_exposure", "distance"},
        {"ma_surface", "distance"},
    };
    links.insert(links.end(), mechanisms.begin(), mechanisms.end());
    return links;
}

EdgeConstraints expert_constraints(const std::vector<Variable>& variables) {
    const auto links = expert_links();
    const std::set<NamedEdge> allowed(links.begin(), links.end());
    EdgeConstraints out;
    for (const auto& p : variables) {
        for (const auto& c : variables) {
            if (p.name != c.name && !allowed.count({p.name, c.name})) out.forbidden.emplace_back(p.name, c.name);
        }
    }
    return out;
}

std::vector<Variable> default_variables() {
    std::vector<Variable> out;
    for (const auto& vr : default_discretization().variables) {
        Variable v{vr.name, {}, vr.kind};
        if (const auto* c = std::get_if<CutRule>(&vr.rule)) v.states = c->labels;
        if (const auto* q = std::get_if<QuartileRule>(&vr.rule)) v.states = q->labels;
        if (const auto* m = std::get_if<MappingRule>(&vr.rule)) v.states = m->states;
        out.push_back(std::move(v));
    }
    return out;
}

namespace {

// Discretised Gaussian bump over k ordered states centred at lean * (k - 1).
std::vector<double> leaning_row(std::size_t k, double lean, double spread = 0.9) {
    const double centre = std::clamp(lean, 0.0, 1.0) * static_cast<double>(k - 1);
    std::vector<double> row(k);
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double d = static_cast<double>(i) - centre;
        row[i] = std::exp(-d * d / (2.0 * spread * spread));
        sum += row[i];
    }
    for (double& p : row) p /= sum;
    return row;
}

}  // namespace

Network reference_network() {
    std::vector<Variable> variables;
    for (const auto& v : default_variables()) {
        if (v.name == "n_mas" || v.name == "land_access" || v.name == "perceived_poaching") continue;
        variables.push_back(v);
    }
    const std::vector<NamedEdge> edges = {
        {"other_activities", "available_oa"}, {"other_activities", "enforcement"}, {"ma_surface", "available_oa"},
        {"available_oa", "distance"},         {"wave_exposure", "distance"},      {"distance", "illegal_proportion"},
        {"enforcement", "effectiveness"},     {"effectiveness", "e_hat"},
    };
    Dag dag(variables, edges);

    std::vector<Cpt> cpts;
    cpts.push_back({"other_activities", {}, {{0.5, 0.5}}});
    cpts.push_back({"ma_surface", {}, {{0.25, 0.25, 0.25, 0.25}}});
    cpts.push_back({"wave_exposure", {}, {{0.5, 0.5}}});

    Cpt oa{"available_oa", {"ma_surface", "other_activities"}, {}};
    for (int surface = 0; surface < 4; ++surface) {
        for (int other = 0; other < 2; ++other) oa.rows.push_back(leaning_row(4, 0.3 + 0.4 * other - 0.1 * surface / 3.0));
    }
    cpts.push_back(oa);

    cpts.push_back({"enforcement", {"other_activities"}, {leaning_row(4, 0.8), leaning_row(4, 0.45)}});

    Cpt distance{"distance", {"available_oa", "wave_exposure"}, {}};
    for (int avail = 0; avail < 4; ++avail) {
        for (int exposure = 0; exposure < 2; ++exposure) {
            distance.rows.push_back(leaning_row(4, 0.85 - 0.7 * avail / 3.0 + (exposure == 0 ? 0.1 : -0.1)));
        }
    }
    cpts.push_back(distance);

    Cpt effectiveness{"effectiveness", {"enforcement"}, {}};
    for (int e = 0; e < 4; ++e) effectiveness.rows.push_back(leaning_row(5, 0.15 + 0.22 * e));
    cpts.push_back(effectiveness);

    Cpt illegal{"illegal_proportion", {"distance"}, {}};
    for (int d = 0; d < 4; ++d) illegal.rows.push_back(leaning_row(3, 0.05 + 0.3 * d, 0.7));
    cpts.push_back(illegal);

    Cpt size{"e_hat", {"effectiveness"}, {}};
    for (int e = 0; e < 5; ++e) size.rows.push_back(leaning_row(3, 0.15 + 0.18 * e, 0.8));
    cpts.push_back(size);

    return build_network(std::move(dag), std::move(cpts));
}

std::vector<Scenario> preset_scenarios() {
    const std::vector<std::string> low_illegal = {"le_0.15", "le_0.31"};
    auto make = [](std::string name, std::vector<StateConstraints::Clause> given, StateConstraints::Clause event) {
        Scenario sc{std::move(name), {}, {}, kDefaultScenarioSamples, std::nullopt};
        for (auto& c : given) sc.evidence.add(std::move(c.first), std::move(c.second));
        sc.event.add(std::move(event.first), std::move(event.second));
        return sc;
    };
    return {
        make("Sce. 1", {{"available_oa", {"very_high", "high"}}, {"other_activities", {"Y"}}},
             {"illegal_proportion", low_illegal}),
        make("Sce. 2", {{"available_oa", {"very_high", "high"}}, {"distance", {"close"}}},
             {"illegal_proportion", low_illegal}),
        make("Sce. 3", {{"available_oa", {"very_high", "high"}}, {"enforcement", {"very_high", "high"}}},
             {"illegal_proportion", low_illegal}),
        make("Sce. 4", {{"enforcement", {"very_high", "high"}}, {"other_activities", {"Y"}}},
             {"e_hat", {"le_0.59", "gt_0.59"}}),
        make("Sce. 5", {{"effectiveness", {"moderate", "high", "very_high"}}, {"other_activities", {"Y"}}},
             {"e_hat", {"gt_0.59"}}),
        make("Sce. 6", {{"other_activities", {"Y"}}, {"distance", {"close"}}}, {"illegal_proportion", low_illegal}),
        make("Sce. 7", {{"effectiveness", {"very_high", "high"}}, {"distance", {"close"}}},
             {"illegal_proportion", low_illegal}),
    };
}

std::vector<ReverseDriver> reverse_drivers() {
    return {
        {"available_oa", {"high", "very_high"}},
        {"enforcement", {"high", "very_high"}},
        {"effectiveness", {"moderate", "high", "very_high"}},
        {"distance", {"close"}},
        {"other_activities", {"Y"}},
    };
}

QueryEvent default_good_state() { return good_state_event(relative_size_scale(), illegal_proportion_scale()); }

LearnResult learn_pipeline(const std::vector<fishery::MaRecord>& records,
                           const std::vector<fishery::SizeSample>& samples, const LearnOptions& options) {
    auto metrics = pair_state_metrics(records, samples);
    std::vector<Observation> observations;
    for (std::size_t i = 0; i < records.size(); ++i) observations.push_back({records[i], metrics[i]});

    DiscreteDataset full = discretize(observations, options.discretization);
    DiscreteDataset data = drop_variables(full, options.excluded);
    data.require_rows();

    SearchConfig config = options.search;
    EdgeConstraints constraints;
    if (options.constraints) {
        constraints = *options.constraints;
    } else if (options.use_expert_constraints) {
        constraints = expert_constraints(data.variables());
    }
    // Constraint files may mention excluded variables; those lines no longer apply.
    auto present = [&](const NamedEdge& e) {
        full.index_of(e.first);
        full.index_of(e.second);
        return data.find(e.first) && data.find(e.second);
    };
    for (const auto& e : constraints.required) {
        if (present(e)) config.required_edges.push_back(e);
    }
    for (const auto& e : constraints.forbidden) {
        if (present(e)) config.forbidden_edges.push_back(e);
    }

    ScoredDag structure = tabu_search(data, config);
    Network network = fit_cpts(data, structure.dag, options.alpha);
    EdgeStrengths strengths = edge_strengths(data, structure.dag);
    return {std::move(observations), std::move(full), std::move(data), std::move(structure), std::move(network),
            std::move(strengths)};
}

}  // namespace turfbbn::pipeline
