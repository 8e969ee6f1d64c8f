#include "turfbbn/service/api.hpp"

#include "turfbbn/error.hpp"
#include "turfbbn/infer/query.hpp"

#include <set>

namespace turfbbn::service {

using nlohmann::json;

namespace {

// Request validation failure pointing at a JSON path.
struct BadRequest {
    std::string field;
    std::string message;
};

ApiResponse error_response(int status, std::string code, const std::string& message, const std::string& field = {}) {
    json err = {{"code", std::move(code)}, {"message", message}};
    if (!field.empty()) err["field"] = field;
    return {status, {{"error", err}}};
}

int status_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::ZeroProbabilityEvidence:
    case ErrorCode::AllZeroWeights: return 422;
    default: return 400;
    }
}

void only_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) throw BadRequest{path, "expected an object"};
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) throw BadRequest{path + "." + key, "unknown field"};
    }
}

StateConstraints parse_clauses(const json& list, const std::string& path) {
    if (!list.is_array()) throw BadRequest{path, "expected an array of {var, states}"};
    StateConstraints out;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string p = path + "[" + std::to_string(i) + "]";
        only_keys(list[i], p, {"var", "states"});
        if (!list[i].contains("var") || !list[i]["var"].is_string()) throw BadRequest{p + ".var", "expected a string"};
        const json& states = list[i].contains("states") ? list[i]["states"] : json();
        if (!states.is_array() || states.empty()) throw BadRequest{p + ".states", "expected a non-empty array of strings"};
        std::vector<std::string> names;
        for (std::size_t k = 0; k < states.size(); ++k) {
            if (!states[k].is_string()) throw BadRequest{p + ".states[" + std::to_string(k) + "]", "expected a string"};
            names.push_back(states[k].get<std::string>());
        }
        const std::string var = list[i]["var"].get<std::string>();
        if (out.constrains(var)) throw BadRequest{p + ".var", "variable '" + var + "' listed twice"};
        out.add(var, std::move(names));
    }
    return out;
}

json clauses_json(const StateConstraints& c) {
    json out = json::array();
    for (const auto& [var, states] : c.clauses()) out.push_back({{"var", var}, {"states", states}});
    return out;
}

json result_json(const QueryResult& r) {
    return {{"estimate", r.estimate}, {"ci_low", r.ci_low},       {"ci_high", r.ci_high},
            {"method", to_string(r.method)}, {"n_samples", r.n_samples}};
}

json parse_body(std::string_view body) {
    try {
        return json::parse(body);
    } catch (const json::parse_error& e) {
        throw BadRequest{"$", std::string("malformed JSON: ") + e.what()};
    }
}

template <class Handler>
ApiResponse guarded(Handler&& handler) {
    try {
        return handler();
    } catch (const BadRequest& b) {
        return error_response(400, "InvalidRequest", b.message, b.field);
    } catch (const Error& e) {
        return error_response(status_for(e.code()), std::string(error_code_name(e.code())), e.what());
    } catch (const std::exception& e) {
        return error_response(500, "Internal", e.what());
    }
}

}  // namespace

QueryService::QueryService(NetworkDocument document, std::vector<pipeline::Scenario> presets, ServiceOptions options)
    : document_(std::move(document)), presets_(std::move(presets)), options_(options) {}

ApiResponse QueryService::network() const {
    const Dag& dag = document_.network.dag();
    json vars = json::array();
    for (const auto& v : dag.variables()) {
        vars.push_back({{"name", v.name}, {"states", v.states}, {"kind", to_string(v.kind)}});
    }
    json edges = json::array();
    for (const auto& e : dag.named_edges()) {
        auto it = document_.strengths.find(e);
        edges.push_back({{"parent", e.first},
                         {"child", e.second},
                         {"strength", it == document_.strengths.end() ? json(nullptr) : json(it->second)}});
    }
    json responses = json::array();
    for (const char* r : {"illegal_proportion", "e_hat"}) {
        if (dag.find(r)) responses.push_back(r);
    }
    return {200, {{"variables", vars}, {"edges", edges}, {"responses", responses}}};
}

ApiResponse QueryService::query(std::string_view request_body) const {
    return guarded([&] {
        json req = parse_body(request_body);
        only_keys(req, "$", {"evidence", "event", "n_samples", "seed"});
        Evidence evidence{req.contains("evidence") ? parse_clauses(req["evidence"], "$.evidence") : StateConstraints{}};
        if (!req.contains("event")) throw BadRequest{"$.event", "missing"};
        QueryEvent event{parse_clauses(req["event"], "$.event")};
        if (event.empty()) throw BadRequest{"$.event", "must constrain at least one variable"};

        std::size_t n = options_.samples;
        if (req.contains("n_samples")) {
            const json& j = req["n_samples"];
            if (!j.is_number_unsigned() || j.get<std::uint64_t>() < 1 || j.get<std::uint64_t>() > 1'000'000) {
                throw BadRequest{"$.n_samples", "expected an integer in 1..1000000"};
            }
            n = j.get<std::size_t>();
        }
        std::uint64_t seed = options_.seed;
        if (req.contains("seed")) {
            if (!req["seed"].is_number_unsigned()) throw BadRequest{"$.seed", "expected a non-negative integer"};
            seed = req["seed"].get<std::uint64_t>();
        }

        const Network& net = document_.network;
        QueryResult sampled = lw_query(net, event, evidence, n, seed);
        if (net.size() > kExactNodeLimit) {
            return ApiResponse{200, result_json(sampled)};
        }
        QueryResult exact = exact_query(net, event, evidence);
        json body = result_json(exact);
        body["sampled"] = result_json(sampled);
        return ApiResponse{200, body};
    });
}

ApiResponse QueryService::reverse(std::string_view request_body) const {
    return guarded([&] {
        json req = parse_body(request_body);
        only_keys(req, "$", {"driver", "event"});
        if (!req.contains("driver") || !req["driver"].is_string()) throw BadRequest{"$.driver", "expected a string"};
        if (!req.contains("event")) throw BadRequest{"$.event", "missing"};
        QueryEvent event{parse_clauses(req["event"], "$.event")};
        if (event.empty()) throw BadRequest{"$.event", "must constrain at least one variable"};
        auto dist = reverse_query(document_.network, req["driver"].get<std::string>(), event);
        json states = json::array();
        for (std::size_t k = 0; k < dist.states.size(); ++k) {
            states.push_back({{"state", dist.states[k]}, {"probability", dist.probabilities[k]}});
        }
        return ApiResponse{200, {{"driver", dist.driver}, {"distribution", states}}};
    });
}

ApiResponse QueryService::scenarios() const {
    json out = json::array();
    for (std::size_t i = 0; i < presets_.size(); ++i) {
        const auto& sc = presets_[i];
        out.push_back({{"name", sc.name},
                       {"evidence", clauses_json(sc.evidence)},
                       {"event", clauses_json(sc.event)},
                       {"n_samples", sc.n_samples},
                       {"seed", sc.seed.value_or(options_.seed + i)}});
    }
    return {200, {{"scenarios", out}}};
}

}  // namespace turfbbn::service
