#include "turfbbn/infer/query.hpp"

#include "turfbbn/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace turfbbn {

std::string_view to_string(QueryMethod method) noexcept {
    return method == QueryMethod::Exact ? "exact" : "likelihood_weighting";
}

namespace {

// Variables needed to answer a query: everything constrained plus its
// ancestors, in network topological order. Barren descendants sum to one.
std::vector<std::size_t> relevant_order(const Dag& dag, const std::vector<StateMask>& evidence,
                                        const std::vector<StateMask>& event) {
    const std::size_t n = dag.size();
    std::vector<bool> needed(n, false);
    std::vector<std::size_t> stack;
    for (std::size_t v = 0; v < n; ++v) {
        const StateMask full = full_mask(dag.variable(v).cardinality());
        if (evidence[v] != full || event[v] != full) {
            needed[v] = true;
            stack.push_back(v);
        }
    }
    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t p : dag.parents(v)) {
            if (!needed[p]) {
                needed[p] = true;
                stack.push_back(p);
            }
        }
    }
    std::vector<std::size_t> order;
    for (std::size_t v : dag.order()) {
        if (needed[v]) order.push_back(v);
    }
    return order;
}

struct Enumerator {
    const Network& net;
    const std::vector<std::size_t>& order;
    const std::vector<StateMask>& evidence;
    const std::vector<StateMask>& event;
    std::vector<std::size_t> assignment;
    double p_evidence = 0.0;
    double p_joint = 0.0;

    void visit(std::size_t depth, double mass, bool event_holds) {
        if (depth == order.size()) {
            p_evidence += mass;
            if (event_holds) p_joint += mass;
            return;
        }
        const std::size_t v = order[depth];
        auto row = net.row(v, assignment);
        for (std::size_t s = 0; s < row.size(); ++s) {
            if (!(evidence[v] >> s & 1U) || row[s] == 0.0) continue;
            assignment[v] = s;
            visit(depth + 1, mass * row[s], event_holds && (event[v] >> s & 1U));
        }
    }
};

void check_event(const QueryEvent& event) {
    if (event.empty()) throw Error(ErrorCode::InvalidQuery, "query event must constrain at least one variable");
}

}  // namespace

QueryResult exact_query(const Network& network, const QueryEvent& event, const Evidence& evidence) {
    check_event(event);
    const Dag& dag = network.dag();
    auto ev = evidence.resolve(dag);
    auto target = event.resolve(dag);
    auto order = relevant_order(dag, ev, target);
    if (order.size() > kExactNodeLimit) {
        throw Error(ErrorCode::InvalidQuery, "exact enumeration limited to " + std::to_string(kExactNodeLimit) + " nodes");
    }

    Enumerator e{network, order, ev, target, std::vector<std::size_t>(dag.size(), 0)};
    e.visit(0, 1.0, true);
    if (e.p_evidence <= 0.0) throw Error(ErrorCode::ZeroProbabilityEvidence, "evidence has probability zero");
    double p = std::clamp(e.p_joint / e.p_evidence, 0.0, 1.0);
    return {p, p, p, 0, QueryMethod::Exact};
}

QueryResult lw_query(const Network& network, const QueryEvent& event, const Evidence& evidence, std::size_t n,
                     std::uint64_t seed) {
    check_event(event);
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "sample count must be at least 1");
    const Dag& dag = network.dag();
    auto ev = evidence.resolve(dag);
    auto target = event.resolve(dag);
    auto order = relevant_order(dag, ev, target);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::size_t> assignment(dag.size(), 0);
    std::vector<double> weights(n, 0.0);
    std::vector<char> hits(n, 0);

    for (std::size_t i = 0; i < n; ++i) {
        double w = 1.0;
        for (std::size_t v : order) {
            auto row = network.row(v, assignment);
            const StateMask allowed = ev[v];
            double mass = 0.0;
            for (std::size_t s = 0; s < row.size(); ++s) {
                if (allowed >> s & 1U) mass += row[s];
            }
            if (mass <= 0.0) {
                w = 0.0;
                break;
            }
            if (allowed != full_mask(row.size())) w *= mass;
            double u = unit(rng) * mass;
            std::size_t pick = row.size();
            for (std::size_t s = 0; s < row.size(); ++s) {
                if (!(allowed >> s & 1U) || row[s] == 0.0) continue;
                pick = s;
                if (u < row[s]) break;
                u -= row[s];
            }
            assignment[v] = pick;
        }
        weights[i] = w;
        if (w > 0.0) {
            bool holds = true;
            for (std::size_t v : order) holds = holds && (target[v] >> assignment[v] & 1U);
            hits[i] = holds;
        }
    }

    double total = 0.0;
    double favourable = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        total += weights[i];
        if (hits[i]) favourable += weights[i];
    }
    if (total <= 0.0) throw Error(ErrorCode::AllZeroWeights, "every sample has zero weight; evidence is impossible");

    const double p = std::clamp(favourable / total, 0.0, 1.0);
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = (hits[i] ? 1.0 : 0.0) - p;
        var += weights[i] * weights[i] * d * d;
    }
    const double se = std::sqrt(var) / total;
    return {p, std::max(0.0, p - 1.96 * se), std::min(1.0, p + 1.96 * se), n, QueryMethod::LikelihoodWeighting};
}

double DriverDistribution::mass(const std::vector<std::string>& group) const {
    double m = 0.0;
    for (const auto& g : group) {
        auto it = std::find(states.begin(), states.end(), g);
        if (it == states.end()) throw Error(ErrorCode::UnknownState, "'" + driver + "' has no state '" + g + "'");
        m += probabilities[static_cast<std::size_t>(it - states.begin())];
    }
    return m;
}

DriverDistribution reverse_query(const Network& network, std::string_view driver, const QueryEvent& response) {
    const Variable& var = network.dag().variable(network.dag().index_of(driver));
    if (response.constrains(var.name)) {
        throw Error(ErrorCode::InvalidQuery, "response event constrains the driver '" + var.name + "'");
    }
    check_event(response);
    Evidence given{StateConstraints(response)};
    DriverDistribution out{var.name, var.states, {}};
    for (const auto& s : var.states) {
        QueryEvent e;
        e.add(var.name, {s});
        out.probabilities.push_back(exact_query(network, e, given).estimate);
    }
    return out;
}

QueryEvent good_state_event(const ResponseScale& relative_size, const ResponseScale& illegal,
                            const GoodStateThresholds& thresholds) {
    auto cut_index = [](const ResponseScale& scale, double t) {
        if (scale.labels.size() != scale.cuts.size() + 1) {
            throw Error(ErrorCode::InvalidArgument, "scale '" + scale.variable + "' needs one more label than cuts");
        }
        for (std::size_t k = 0; k < scale.cuts.size(); ++k) {
            if (std::abs(scale.cuts[k] - t) <= 1e-12) return k;
        }
        throw Error(ErrorCode::ThresholdNotACutPoint,
                    std::to_string(t) + " is not a cut point of '" + scale.variable + "'");
    };
    const std::size_t above = cut_index(relative_size, thresholds.relative_size_above);
    const std::size_t below = cut_index(illegal, thresholds.illegal_below);

    QueryEvent event;
    event.add(relative_size.variable,
              std::vector<std::string>(relative_size.labels.begin() + static_cast<std::ptrdiff_t>(above) + 1,
                                       relative_size.labels.end()));
    event.add(illegal.variable, std::vector<std::string>(illegal.labels.begin(),
                                                         illegal.labels.begin() + static_cast<std::ptrdiff_t>(below) + 1));
    return event;
}

}  // namespace turfbbn
