#include "doctest.h"

#include "turfbbn/core/cpt.hpp"
#include "turfbbn/core/dag.hpp"
#include "turfbbn/core/evidence.hpp"
#include "turfbbn/core/network.hpp"
#include "turfbbn/core/network_io.hpp"
#include "turfbbn/error.hpp"
#include "turfbbn/pipeline/fishery_model.hpp"

#include "json.hpp"

#include <algorithm>
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

}  // namespace

TEST_CASE("single binary root builds") {
    Dag dag({binary("A")}, std::vector<NamedEdge>{});
    auto net = build_network(dag, {{"A", {}, {{0.7, 0.3}}}});
    CHECK(net.size() == 1);
    CHECK(net.cpt("A").rows[0][0] == doctest::Approx(0.7));
}

TEST_CASE("self loop and two-cycle rejected") {
    CHECK(code_of([] { Dag({binary("A")}, std::vector<NamedEdge>{{"A", "A"}}); }) == ErrorCode::CycleDetected);
    CHECK(code_of([] {
              Dag({binary("A"), binary("B")}, std::vector<NamedEdge>{{"A", "B"}, {"B", "A"}});
          }) == ErrorCode::CycleDetected);
    CHECK(code_of([] {
              Dag({binary("A"), binary("B"), binary("C")},
                  std::vector<NamedEdge>{{"A", "B"}, {"B", "C"}, {"C", "A"}});
          }) == ErrorCode::CycleDetected);
}

TEST_CASE("dag rejects bad variables and edges") {
    CHECK(code_of([] { Dag({binary("A"), binary("A")}, std::vector<NamedEdge>{}); }) == ErrorCode::InvalidVariable);
    CHECK(code_of([] { Dag({{"A", {"x"}, VariableKind::Nominal}}, std::vector<NamedEdge>{}); }) ==
          ErrorCode::InvalidVariable);
    CHECK(code_of([] { Dag({{"A", {"x", "x"}, VariableKind::Nominal}}, std::vector<NamedEdge>{}); }) ==
          ErrorCode::InvalidVariable);
    CHECK(code_of([] { Dag({binary("A")}, std::vector<NamedEdge>{{"A", "Z"}}); }) == ErrorCode::UnknownVariable);
    CHECK(code_of([] {
              Dag({binary("A"), binary("B")}, std::vector<NamedEdge>{{"A", "B"}, {"A", "B"}});
          }) == ErrorCode::DuplicateEdge);
}

TEST_CASE("topological order") {
    SUBCASE("chain") {
        Dag dag({binary("C"), binary("B"), binary("A")}, std::vector<NamedEdge>{{"A", "B"}, {"B", "C"}});
        CHECK(topological_order(dag) == std::vector<std::string>{"A", "B", "C"});
    }
    SUBCASE("edgeless keeps declaration order") {
        Dag dag({binary("A"), binary("B")}, std::vector<NamedEdge>{});
        CHECK(topological_order(dag) == std::vector<std::string>{"A", "B"});
        Dag rev({binary("B"), binary("A")}, std::vector<NamedEdge>{});
        CHECK(topological_order(rev) == std::vector<std::string>{"B", "A"});
    }
    SUBCASE("reference topology: OA availability before distance before illegal proportion") {
        auto order = topological_order(pipeline::reference_network().dag());
        auto pos = [&](const char* n) { return std::find(order.begin(), order.end(), n) - order.begin(); };
        CHECK(pos("available_oa") < pos("distance"));
        CHECK(pos("distance") < pos("illegal_proportion"));
        CHECK(pos("enforcement") < pos("effectiveness"));
        CHECK(pos("effectiveness") < pos("e_hat"));
    }
    SUBCASE("every edge respects the order") {
        auto net = pipeline::reference_network();
        auto order = net.dag().order();
        std::vector<std::size_t> pos(order.size());
        for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
        for (const auto& e : net.dag().edges()) CHECK(pos[e.parent] < pos[e.child]);
    }
}

TEST_CASE("parent combinations") {
    CHECK(parent_combinations({}) == std::vector<std::vector<std::string>>{{}});
    std::vector<Variable> xy{{"X", {"a", "b"}, VariableKind::Nominal}, {"Y", {"c", "d"}, VariableKind::Nominal}};
    CHECK(parent_combinations(xy) ==
          std::vector<std::vector<std::string>>{{"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}});
    std::vector<Variable> x3{{"X", {"a", "b", "c"}, VariableKind::Ordinal}};
    CHECK(parent_combinations(x3).size() == 3);
}

TEST_CASE("build_network validates CPTs") {
    Dag dag({binary("A"), binary("B")}, std::vector<NamedEdge>{{"A", "B"}});
    Cpt a{"A", {}, {{0.7, 0.3}}};
    Cpt b{"B", {"A"}, {{0.9, 0.1}, {0.2, 0.8}}};
    CHECK_NOTHROW(build_network(dag, {a, b}));
    CHECK(code_of([&] { build_network(dag, {a}); }) == ErrorCode::CptShapeMismatch);
    CHECK(code_of([&] { build_network(dag, {a, b, b}); }) == ErrorCode::CptShapeMismatch);
    CHECK(code_of([&] { build_network(dag, {a, Cpt{"B", {}, {{0.5, 0.5}}}}); }) == ErrorCode::CptShapeMismatch);
    CHECK(code_of([&] { build_network(dag, {a, Cpt{"B", {"A"}, {{0.9, 0.1}}}}); }) == ErrorCode::CptShapeMismatch);
    CHECK(code_of([&] { build_network(dag, {a, Cpt{"B", {"A"}, {{0.9, 0.1, 0.0}, {0.2, 0.8, 0.0}}}}); }) ==
          ErrorCode::CptShapeMismatch);
    CHECK(code_of([&] { build_network(dag, {Cpt{"A", {}, {{0.6, 0.3}}}, b}); }) == ErrorCode::RowNotNormalized);
    CHECK(code_of([&] { build_network(dag, {Cpt{"A", {}, {{1.2, -0.2}}}, b}); }) == ErrorCode::RowNotNormalized);
}

TEST_CASE("row lookup uses parent order of the CPT") {
    std::vector<Variable> vars{binary("A"), {"B", {"x", "y", "z"}, VariableKind::Nominal}, binary("C")};
    Dag dag(vars, std::vector<NamedEdge>{{"A", "C"}, {"B", "C"}});
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < 6; ++i) rows.push_back({0.1 * (i + 1), 1.0 - 0.1 * (i + 1)});
    // C's CPT lists B before A: row = b * 2 + a
    auto net = build_network(dag, {{"A", {}, {{0.5, 0.5}}}, {"B", {}, {{0.2, 0.3, 0.5}}}, {"C", {"B", "A"}, rows}});
    std::vector<std::size_t> assignment{1, 2, 0};  // A=F, B=z
    CHECK(net.row(2, assignment)[0] == doctest::Approx(0.6));
}

TEST_CASE("evidence clauses") {
    Dag dag({binary("A"), {"B", {"x", "y", "z"}, VariableKind::Nominal}}, std::vector<NamedEdge>{});
    StateConstraints c;
    c.add("B", {"z", "x"});
    auto masks = c.resolve(dag);
    CHECK(masks[0] == full_mask(2));
    CHECK(masks[1] == 0b101u);
    CHECK(describe(c) == "B in {z, x}");
    CHECK(describe(StateConstraints{}) == "-");
    CHECK(code_of([&] { c.add("B", {"x"}); }) == ErrorCode::InvalidQuery);
    CHECK(code_of([&] { StateConstraints{}.add("A", {}); }) == ErrorCode::InvalidQuery);
    StateConstraints bad;
    bad.add("Q", {"x"});
    CHECK(code_of([&] { bad.resolve(dag); }) == ErrorCode::UnknownVariable);
    StateConstraints bad_state;
    bad_state.add("A", {"maybe"});
    CHECK(code_of([&] { bad_state.resolve(dag); }) == ErrorCode::UnknownState);
}

TEST_CASE("network document round trip") {
    auto net = pipeline::reference_network();
    EdgeStrengths strengths;
    double s = 0.5;
    for (const auto& e : net.dag().named_edges()) strengths[e] = (s += 1.0);
    auto text = serialize_network(net, strengths);
    auto doc = deserialize_network(text);
    CHECK(doc.network.dag().edges() == net.dag().edges());
    CHECK(doc.network.dag() == net.dag());
    CHECK(doc.strengths == strengths);
    for (std::size_t v = 0; v < net.size(); ++v) {
        const auto& a = net.cpt(v);
        const auto& b = doc.network.cpt(v);
        CHECK(a.parents == b.parents);
        REQUIRE(a.rows.size() == b.rows.size());
        for (std::size_t r = 0; r < a.rows.size(); ++r)
            for (std::size_t k = 0; k < a.rows[r].size(); ++k)
                CHECK(std::abs(a.rows[r][k] - b.rows[r][k]) <= 1e-15 * std::max(1.0, std::abs(a.rows[r][k])));
    }
}

TEST_CASE("network document errors") {
    auto doc = nlohmann::json::parse(serialize_network(pipeline::reference_network()));
    SUBCASE("empty variable list") {
        doc["variables"] = nlohmann::json::array();
        CHECK(code_of([&] { deserialize_network(doc.dump()); }) == ErrorCode::ParseError);
    }
    SUBCASE("row summing to 0.9") {
        auto& row = doc["cpts"][0]["probabilities"][0];
        row[0] = row[0].get<double>() - 0.1;
        CHECK(code_of([&] { deserialize_network(doc.dump()); }) == ErrorCode::RowNotNormalized);
    }
    SUBCASE("syntax error reports a line") {
        try {
            deserialize_network("{\n\"variables\": [\n,]}");
            FAIL("no throw");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ParseError);
            CHECK(std::string(e.what()).find("line") != std::string::npos);
        }
    }
    SUBCASE("missing field names its path") {
        doc["cpts"][0].erase("child");
        try {
            deserialize_network(doc.dump());
            FAIL("no throw");
        } catch (const Error& e) {
            CHECK(std::string(e.what()).find("$.cpts[0]") != std::string::npos);
        }
    }
    SUBCASE("strength on a missing edge") {
        doc["edge_strengths"] = {{{"parent", "e_hat"}, {"child", "distance"}, {"strength", 1.0}}};
        CHECK(code_of([&] { deserialize_network(doc.dump()); }) == ErrorCode::UnknownEdge);
    }
    SUBCASE("cycle in the edge list") {
        doc["edges"].push_back({"illegal_proportion", "ma_surface"});
        doc["edges"].push_back({"ma_surface", "illegal_proportion"});
        CHECK(code_of([&] { deserialize_network(doc.dump()); }) == ErrorCode::CycleDetected);
    }
}

TEST_CASE("dot export") {
    auto net = pipeline::reference_network();
    EdgeStrengths strengths;
    for (const auto& e : net.dag().named_edges()) strengths[e] = 1.0;
    strengths[{"distance", "illegal_proportion"}] = 4.0;
    auto dot = export_dot(net.dag(), strengths);
    CHECK(dot.rfind("digraph", 0) == 0);
    CHECK(dot.find("rankdir=LR") != std::string::npos);
    CHECK(dot.find("\"distance\" -> \"illegal_proportion\"") != std::string::npos);
    CHECK(dot.find("penwidth=6") != std::string::npos);
    CHECK(std::count(dot.begin(), dot.end(), '>') >= 8);
    auto plain = export_dot(net.dag());
    CHECK(plain.find("penwidth") == std::string::npos);
}
