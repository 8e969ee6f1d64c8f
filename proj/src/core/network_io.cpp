#include "turfbbn/core/network_io.hpp"

#include "turfbbn/error.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

namespace turfbbn {

using nlohmann::json;

std::string serialize_network(const Network& network, const EdgeStrengths& strengths) {
    const Dag& dag = network.dag();
    json doc;
    doc["variables"] = json::array();
    for (const auto& v : dag.variables()) {
        doc["variables"].push_back({{"name", v.name}, {"states", v.states}, {"kind", to_string(v.kind)}});
    }
    doc["edges"] = json::array();
    for (const auto& [p, c] : dag.named_edges()) doc["edges"].push_back({p, c});
    doc["cpts"] = json::array();
    for (std::size_t v = 0; v < dag.size(); ++v) {
        const Cpt& cpt = network.cpt(v);
        std::vector<Variable> parents;
        for (std::size_t p : network.cpt_parents(v)) parents.push_back(dag.variable(p));
        doc["cpts"].push_back({{"child", cpt.child},
                               {"parents", cpt.parents},
                               {"parent_states", parent_combinations(parents)},
                               {"probabilities", cpt.rows}});
    }
    if (!strengths.empty()) {
        doc["edge_strengths"] = json::array();
        for (const auto& [edge, s] : strengths) {
            doc["edge_strengths"].push_back({{"parent", edge.first}, {"child", edge.second}, {"strength", s}});
        }
    }
    return doc.dump(2) + "\n";
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw Error(ErrorCode::ParseError, "field '" + path + "': " + what);
}

const json& member(const json& obj, const char* key, const std::string& path) {
    if (!obj.is_object()) fail(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(path + "." + key, "missing");
    return *it;
}

const json& array_at(const json& obj, const char* key, const std::string& path) {
    const json& a = member(obj, key, path);
    if (!a.is_array()) fail(path + "." + key, "expected an array");
    return a;
}

std::string string_of(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

std::vector<std::string> strings_of(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of strings");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(string_of(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

std::size_t line_of(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

}  // namespace

NetworkDocument deserialize_network(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line_of(text, e.byte)) + ": malformed JSON");
    }
    if (!doc.is_object()) fail("$", "expected an object");

    std::vector<Variable> variables;
    const json& jvars = array_at(doc, "variables", "$");
    if (jvars.empty()) fail("$.variables", "no variables declared");
    for (std::size_t i = 0; i < jvars.size(); ++i) {
        const std::string path = "$.variables[" + std::to_string(i) + "]";
        Variable v;
        v.name = string_of(member(jvars[i], "name", path), path + ".name");
        v.states = strings_of(member(jvars[i], "states", path), path + ".states");
        auto kind = jvars[i].find("kind");
        v.kind = kind == jvars[i].end() ? VariableKind::Nominal
                                        : parse_variable_kind(string_of(*kind, path + ".kind"));
        variables.push_back(std::move(v));
    }

    std::vector<NamedEdge> edges;
    const json& jedges = array_at(doc, "edges", "$");
    for (std::size_t i = 0; i < jedges.size(); ++i) {
        const std::string path = "$.edges[" + std::to_string(i) + "]";
        auto pair = strings_of(jedges[i], path);
        if (pair.size() != 2) fail(path, "expected [parent, child]");
        edges.emplace_back(pair[0], pair[1]);
    }
    Dag dag(std::move(variables), edges);

    std::vector<Cpt> cpts;
    const json& jcpts = array_at(doc, "cpts", "$");
    for (std::size_t i = 0; i < jcpts.size(); ++i) {
        const std::string path = "$.cpts[" + std::to_string(i) + "]";
        Cpt cpt;
        cpt.child = string_of(member(jcpts[i], "child", path), path + ".child");
        cpt.parents = strings_of(member(jcpts[i], "parents", path), path + ".parents");
        const json& jstates = array_at(jcpts[i], "parent_states", path);
        const json& jprobs = array_at(jcpts[i], "probabilities", path);
        if (jstates.size() != jprobs.size()) fail(path, "parent_states and probabilities differ in length");

        std::vector<Variable> parents;
        for (const auto& p : cpt.parents) parents.push_back(dag.variable(dag.index_of(p)));
        auto combos = parent_combinations(parents);
        std::map<std::vector<std::string>, std::size_t> slot;
        for (std::size_t r = 0; r < combos.size(); ++r) slot.emplace(combos[r], r);
        if (jstates.size() != combos.size()) {
            throw Error(ErrorCode::CptShapeMismatch, path + ": expected " + std::to_string(combos.size()) + " rows");
        }

        cpt.rows.assign(combos.size(), {});
        std::vector<bool> filled(combos.size(), false);
        for (std::size_t r = 0; r < jstates.size(); ++r) {
            const std::string rpath = path + ".probabilities[" + std::to_string(r) + "]";
            auto key = strings_of(jstates[r], path + ".parent_states[" + std::to_string(r) + "]");
            auto it = slot.find(key);
            if (it == slot.end() || filled[it->second]) {
                throw Error(ErrorCode::CptShapeMismatch, path + ": unknown or repeated parent combination at row " +
                                                             std::to_string(r));
            }
            if (!jprobs[r].is_array()) fail(rpath, "expected an array of numbers");
            std::vector<double> row;
            for (std::size_t k = 0; k < jprobs[r].size(); ++k) {
                if (!jprobs[r][k].is_number()) fail(rpath + "[" + std::to_string(k) + "]", "expected a number");
                row.push_back(jprobs[r][k].get<double>());
            }
            double sum = 0.0;
            for (double p : row) sum += p;
            if (sum != 1.0 && std::abs(sum - 1.0) <= kRowTolerance) {
                for (double& p : row) p /= sum;
            }
            cpt.rows[it->second] = std::move(row);
            filled[it->second] = true;
        }
        cpts.push_back(std::move(cpt));
    }

    Network network = build_network(std::move(dag), std::move(cpts));

    EdgeStrengths strengths;
    if (auto js = doc.find("edge_strengths"); js != doc.end()) {
        if (!js->is_array()) fail("$.edge_strengths", "expected an array");
        for (std::size_t i = 0; i < js->size(); ++i) {
            const std::string path = "$.edge_strengths[" + std::to_string(i) + "]";
            const json& e = (*js)[i];
            auto parent = string_of(member(e, "parent", path), path + ".parent");
            auto child = string_of(member(e, "child", path), path + ".child");
            const json& s = member(e, "strength", path);
            if (!s.is_number()) fail(path + ".strength", "expected a number");
            const Dag& d = network.dag();
            if (!d.has_edge(d.index_of(parent), d.index_of(child))) {
                throw Error(ErrorCode::UnknownEdge, path + ": " + parent + " -> " + child + " is not in the DAG");
            }
            strengths[{parent, child}] = s.get<double>();
        }
    }
    return {std::move(network), std::move(strengths)};
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void save_text_file(const std::string& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
    out << text;
    if (!out) throw Error(ErrorCode::InvalidArgument, "write failed for '" + path + "'");
}

NetworkDocument load_network_file(const std::string& path) {
    return deserialize_network(read_text_file(path));
}

std::string export_dot(const Dag& dag, const EdgeStrengths& strengths) {
    double strongest = 0.0;
    for (const auto& [edge, s] : strengths) strongest = std::max(strongest, std::abs(s));

    std::ostringstream out;
    out << std::fixed << std::setprecision(3);
    out << "digraph bbn {\n  rankdir=LR;\n  node [shape=box, style=rounded];\n";
    for (const auto& v : dag.variables()) out << "  \"" << v.name << "\";\n";
    for (const auto& edge : dag.named_edges()) {
        out << "  \"" << edge.first << "\" -> \"" << edge.second << "\"";
        auto it = strengths.find(edge);
        if (it != strengths.end()) {
            double width = strongest > 0.0 ? 0.5 + 5.5 * std::max(0.0, it->second) / strongest : 1.0;
            out << " [penwidth=" << width << ", label=\"" << it->second << "\"]";
        }
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace turfbbn
