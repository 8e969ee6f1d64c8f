#pragma once

#include "turfbbn/core/network.hpp"

#include <map>
#include <string>
#include <string_view>

namespace turfbbn {

/// Optional per-edge annotation carried alongside a network document
/// (structure-score delta of each edge, see learn/score.hpp).
using EdgeStrengths = std::map<NamedEdge, double>;

struct NetworkDocument {
    Network network;
    EdgeStrengths strengths;
};

/// JSON document with keys `variables`, `edges`, `cpts` and the optional
/// `edge_strengths`. Probabilities are written in shortest round-trip form.
std::string serialize_network(const Network& network, const EdgeStrengths& strengths = {});

/// Throws ParseError (with line and field path) on malformed documents and
/// the build_network() errors on invalid content. Rows whose sum is within
/// kRowTolerance of 1 are renormalised.
NetworkDocument deserialize_network(std::string_view text);

NetworkDocument load_network_file(const std::string& path);
void save_text_file(const std::string& path, std::string_view text);
std::string read_text_file(const std::string& path);

/// Graphviz digraph. Edges with a strength get a `penwidth` between 0.5 and
/// 6 scaled by the strongest edge; edges without one are drawn at 1.
std::string export_dot(const Dag& dag, const EdgeStrengths& strengths = {});

}  // namespace turfbbn
