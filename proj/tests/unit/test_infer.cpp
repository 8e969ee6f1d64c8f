#include "doctest.h"

#include "oracles.hpp"

#include "turfbbn/error.hpp"
#include "turfbbn/infer/query.hpp"
#include "turfbbn/learn/fit.hpp"
#include "turfbbn/pipeline/discretize.hpp"

#include <cmath>

using namespace turfbbn;

namespace {

Variable binary(const std::string& name) { return {name, {"T", "F"}, VariableKind::Nominal}; }

template <class F>
ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected turfbbn::Error");
    return ErrorCode::InvalidArgument;
}

Network root07() {
    return build_network(Dag({binary("A")}, std::vector<NamedEdge>{}), {{"A", {}, {{0.7, 0.3}}}});
}

Network chain() {
    return build_network(Dag({binary("A"), binary("B")}, std::vector<NamedEdge>{{"A", "B"}}),
                         {{"A", {}, {{0.7, 0.3}}}, {"B", {"A"}, {{0.9, 0.1}, {0.2, 0.8}}}});
}

StateConstraints clause(const std::string& v, std::vector<std::string> s) {
    StateConstraints c;
    c.add(v, std::move(s));
    return c;
}

QueryEvent ev(const std::string& v, std::vector<std::string> s) { return QueryEvent{clause(v, std::move(s))}; }
Evidence given(const std::string& v, std::vector<std::string> s) { return Evidence{clause(v, std::move(s))}; }

}  // namespace

TEST_CASE("exact query hand cases") {
    CHECK(exact_query(root07(), ev("A", {"T"}), {}).estimate == doctest::Approx(0.7));
    CHECK(exact_query(root07(), ev("A", {"T"}), given("A", {"T"})).estimate == doctest::Approx(1.0));
    auto r = exact_query(chain(), ev("B", {"T"}), {});
    CHECK(r.estimate == doctest::Approx(0.69).epsilon(1e-12));
    CHECK(r.method == QueryMethod::Exact);
    CHECK(r.ci_low == r.estimate);
    CHECK(r.ci_high == r.estimate);
    // Bayes by hand: P(A=T|B=T) = 0.63 / 0.69
    CHECK(exact_query(chain(), ev("A", {"T"}), given("B", {"T"})).estimate == doctest::Approx(0.63 / 0.69));
}

TEST_CASE("exact query errors") {
    CHECK(code_of([] { exact_query(root07(), QueryEvent{}, {}); }) == ErrorCode::InvalidQuery);
    auto zero = build_network(Dag({binary("A"), binary("B")}, std::vector<NamedEdge>{{"A", "B"}}),
                              {{"A", {}, {{1.0, 0.0}}}, {"B", {"A"}, {{1.0, 0.0}, {0.5, 0.5}}}});
    CHECK(code_of([&] { exact_query(zero, ev("A", {"T"}), given("B", {"F"})); }) ==
          ErrorCode::ZeroProbabilityEvidence);
    CHECK(code_of([] { exact_query(root07(), ev("Q", {"T"}), {}); }) == ErrorCode::UnknownVariable);
    CHECK(code_of([] { exact_query(root07(), ev("A", {"maybe"}), {}); }) == ErrorCode::UnknownState);
}

TEST_CASE("exact query matches the joint table") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        auto net = oracle::random_network(2 + seed % 4, 3, seed);
        const auto& vars = net.dag().variables();
        const auto& last = vars.back();
        const auto& first = vars.front();
        QueryEvent event = ev(last.name, {last.states[0]});
        Evidence evidence = given(first.name, {first.states[0], first.states[1]});
        CHECK(exact_query(net, event, evidence).estimate ==
              doctest::Approx(oracle::posterior(net, event, evidence)).epsilon(1e-12));
        CHECK(exact_query(net, event, {}).estimate ==
              doctest::Approx(oracle::posterior(net, event, {})).epsilon(1e-12));
    }
}

TEST_CASE("likelihood weighting") {
    SUBCASE("unconditioned Bernoulli") {
        auto r = lw_query(root07(), ev("A", {"T"}), {}, 2000, 3);
        CHECK(std::abs(r.estimate - 0.7) <= 0.03);
        CHECK(r.method == QueryMethod::LikelihoodWeighting);
        CHECK(r.n_samples == 2000);
        CHECK(r.ci_low <= r.estimate);
        CHECK(r.estimate <= r.ci_high);
    }
    SUBCASE("deterministic per seed") {
        auto a = lw_query(chain(), ev("A", {"T"}), given("B", {"T"}), 500, 9);
        auto b = lw_query(chain(), ev("A", {"T"}), given("B", {"T"}), 500, 9);
        CHECK(a.estimate == b.estimate);
        CHECK(a.ci_low == b.ci_low);
    }
    SUBCASE("set-valued evidence converges to exact") {
        auto net = oracle::random_network(4, 4, 77, 0.8);
        QueryEvent event = ev("v3", {"s0"});
        Evidence evidence = given("v1", {"s0", "s1"});
        double truth = oracle::posterior(net, event, evidence);
        auto r = lw_query(net, event, evidence, 200000, 1);
        CHECK(std::abs(r.estimate - truth) <= 0.01);
    }
    SUBCASE("impossible evidence") {
        auto zero = build_network(Dag({binary("A"), binary("B")}, std::vector<NamedEdge>{{"A", "B"}}),
                                  {{"A", {}, {{1.0, 0.0}}}, {"B", {"A"}, {{1.0, 0.0}, {0.5, 0.5}}}});
        CHECK(code_of([&] { lw_query(zero, ev("A", {"T"}), given("B", {"F"}), 100, 1); }) ==
              ErrorCode::AllZeroWeights);
    }
    SUBCASE("bad arguments") {
        CHECK(code_of([] { lw_query(root07(), ev("A", {"T"}), {}, 0, 1); }) == ErrorCode::InvalidArgument);
        CHECK(code_of([] { lw_query(root07(), QueryEvent{}, {}, 10, 1); }) == ErrorCode::InvalidQuery);
    }
}

TEST_CASE("reverse query") {
    SUBCASE("two-node Bayes rule") {
        auto d = reverse_query(chain(), "A", ev("B", {"T"}));
        CHECK(d.states == std::vector<std::string>{"T", "F"});
        CHECK(d.probabilities[0] == doctest::Approx(0.63 / 0.69).epsilon(1e-12));
        CHECK(d.probabilities[1] == doctest::Approx(0.06 / 0.69).epsilon(1e-12));
        CHECK(d.mass({"T", "F"}) == doctest::Approx(1.0));
    }
    SUBCASE("d-separated driver returns its marginal") {
        auto net = build_network(Dag({binary("A"), binary("B")}, std::vector<NamedEdge>{}),
                                 {{"A", {}, {{0.7, 0.3}}}, {"B", {}, {{0.4, 0.6}}}});
        auto d = reverse_query(net, "A", ev("B", {"F"}));
        CHECK(d.probabilities[0] == doctest::Approx(0.7));
    }
    SUBCASE("agrees with joint-table posteriors") {
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            auto net = oracle::random_network(3 + seed % 3, 3, seed * 7);
            const auto& vars = net.dag().variables();
            QueryEvent response = ev(vars.back().name, {vars.back().states[1]});
            auto d = reverse_query(net, vars.front().name, response);
            auto truth = oracle::driver_posterior(net, vars.front().name, response);
            double sum = 0.0;
            for (std::size_t k = 0; k < truth.size(); ++k) {
                CHECK(std::abs(d.probabilities[k] - truth[k]) <= 1e-9);
                sum += d.probabilities[k];
            }
            CHECK(std::abs(sum - 1.0) <= 1e-9);
        }
    }
    SUBCASE("errors") {
        CHECK(code_of([] { reverse_query(chain(), "A", ev("A", {"T"})); }) == ErrorCode::InvalidQuery);
        CHECK(code_of([] { reverse_query(chain(), "Z", ev("B", {"T"})); }) == ErrorCode::UnknownVariable);
        CHECK(code_of([] { DriverDistribution{"A", {"T"}, {1.0}}.mass({"Q"}); }) == ErrorCode::UnknownState);
    }
}

TEST_CASE("good state event") {
    auto size = pipeline::relative_size_scale();
    auto illegal = pipeline::illegal_proportion_scale();
    auto event = good_state_event(size, illegal);
    REQUIRE(event.clauses().size() == 2);
    CHECK(event.clauses()[0] == StateConstraints::Clause{"e_hat", {"gt_0.59"}});
    CHECK(event.clauses()[1] == StateConstraints::Clause{"illegal_proportion", {"le_0.15", "le_0.31"}});
    auto loose = good_state_event(size, illegal, {0.5, 0.15});
    CHECK(loose.clauses()[0].second == std::vector<std::string>{"le_0.59", "gt_0.59"});
    CHECK(loose.clauses()[1].second == std::vector<std::string>{"le_0.15"});
    CHECK(code_of([&] { good_state_event(size, illegal, {0.4, 0.31}); }) == ErrorCode::ThresholdNotACutPoint);
    CHECK(code_of([&] { good_state_event(size, illegal, {0.59, 0.5}); }) == ErrorCode::ThresholdNotACutPoint);
}

TEST_CASE("good state frequency follows the data") {
    // 20 MAs, 3 of which pass both response thresholds
    std::vector<Variable> vars{{"e_hat", {"le_0.5", "le_0.59", "gt_0.59"}, VariableKind::Ordinal},
                               {"illegal_proportion", {"le_0.15", "le_0.31", "gt_0.31"}, VariableKind::Ordinal}};
    std::vector<std::vector<std::size_t>> rows;
    for (int i = 0; i < 3; ++i) rows.push_back({2, static_cast<std::size_t>(i % 2)});
    for (int i = 0; i < 4; ++i) rows.push_back({2, 2});
    for (int i = 0; i < 13; ++i) rows.push_back({static_cast<std::size_t>(i % 2), static_cast<std::size_t>(i % 3)});
    DiscreteDataset d(vars, rows);
    auto net = fit_cpts(d, Dag(vars, std::vector<NamedEdge>{{"e_hat", "illegal_proportion"}}), 0.0);
    auto event = good_state_event(pipeline::relative_size_scale(), pipeline::illegal_proportion_scale());
    CHECK(exact_query(net, event, {}).estimate == doctest::Approx(0.15).epsilon(1e-12));
}
