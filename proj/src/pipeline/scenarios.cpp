#include "turfbbn/pipeline/scenarios.hpp"

#include "turfbbn/error.hpp"

#include <algorithm>
#include <charconv>
#include <iomanip>
#include <sstream>

namespace turfbbn::pipeline {

namespace {

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::string fixed(double v, int digits = 3) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(digits) << v;
    return out.str();
}

std::string render_clause(const StateConstraints::Clause& c) {
    std::string out = c.first + " in {";
    for (std::size_t k = 0; k < c.second.size(); ++k) out += (k ? ", " : "") + c.second[k];
    return out + "}";
}

}  // namespace

StateConstraints::Clause parse_clause(std::string_view text) {
    const std::string s = trim(text);
    auto in = s.find(" in ");
    auto open = s.find('{');
    auto close = s.rfind('}');
    if (in == std::string::npos || open == std::string::npos || close == std::string::npos || open > close ||
        open < in || trim(std::string_view(s).substr(close + 1)) != "") {
        throw Error(ErrorCode::ParseError, "expected 'variable in {state, ...}', got '" + s + "'");
    }
    StateConstraints::Clause clause{trim(std::string_view(s).substr(0, in)), {}};
    if (clause.first.empty()) throw Error(ErrorCode::ParseError, "missing variable name in '" + s + "'");
    std::string body = s.substr(open + 1, close - open - 1);
    std::istringstream parts(body);
    std::string item;
    while (std::getline(parts, item, ',')) {
        std::string state = trim(item);
        if (state.empty()) throw Error(ErrorCode::ParseError, "empty state in '" + s + "'");
        clause.second.push_back(std::move(state));
    }
    if (clause.second.empty()) throw Error(ErrorCode::ParseError, "empty state set in '" + s + "'");
    return clause;
}

std::vector<Scenario> parse_scenarios(std::string_view text) {
    std::vector<Scenario> out;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        auto space = body.find_first_of(" \t");
        const std::string keyword = body.substr(0, space);
        const std::string rest = space == std::string::npos ? std::string{} : trim(body.substr(space + 1));
        try {
            if (keyword == "scenario") {
                if (rest.empty()) throw Error(ErrorCode::ParseError, "scenario needs a name");
                out.push_back(Scenario{rest, {}, {}, kDefaultScenarioSamples, std::nullopt});
                continue;
            }
            if (out.empty()) throw Error(ErrorCode::ParseError, "'" + keyword + "' before any 'scenario' line");
            Scenario& sc = out.back();
            if (keyword == "given" || keyword == "event") {
                auto clause = parse_clause(rest);
                StateConstraints& target = keyword == "given" ? static_cast<StateConstraints&>(sc.evidence)
                                                              : static_cast<StateConstraints&>(sc.event);
                target.add(std::move(clause.first), std::move(clause.second));
            } else if (keyword == "samples" || keyword == "seed") {
                std::uint64_t v = 0;
                auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), v);
                if (ec != std::errc{} || ptr != rest.data() + rest.size()) {
                    throw Error(ErrorCode::ParseError, "'" + rest + "' is not a non-negative integer");
                }
                if (keyword == "samples") {
                    if (v == 0) throw Error(ErrorCode::ParseError, "samples must be positive");
                    sc.n_samples = v;
                } else {
                    sc.seed = v;
                }
            } else {
                throw Error(ErrorCode::ParseError, "unknown keyword '" + keyword + "'");
            }
        } catch (const Error& e) {
            throw Error(ErrorCode::ParseError, "scenario line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    for (const auto& sc : out) {
        if (sc.event.empty()) throw Error(ErrorCode::ParseError, "scenario '" + sc.name + "' has no event clause");
    }
    return out;
}

std::string format_scenarios(const std::vector<Scenario>& scenarios) {
    std::ostringstream out;
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
        const auto& sc = scenarios[i];
        if (i) out << "\n";
        out << "scenario " << sc.name << "\n";
        for (const auto& c : sc.evidence.clauses()) out << "  given " << render_clause(c) << "\n";
        for (const auto& c : sc.event.clauses()) out << "  event " << render_clause(c) << "\n";
        if (sc.n_samples != kDefaultScenarioSamples) out << "  samples " << sc.n_samples << "\n";
        if (sc.seed) out << "  seed " << *sc.seed << "\n";
    }
    return out.str();
}

bool ScenarioRow::exact_within_ci() const {
    if (!sampled || !exact) return true;
    return *exact >= sampled->ci_low - 1e-12 && *exact <= sampled->ci_high + 1e-12;
}

bool ScenarioReport::has_errors() const {
    return std::any_of(rows.begin(), rows.end(), [](const ScenarioRow& r) { return r.error.has_value(); });
}

ScenarioReport run_scenarios(const Network& network, const std::vector<Scenario>& scenarios, std::uint64_t base_seed) {
    ScenarioReport report;
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
        const Scenario& sc = scenarios[i];
        ScenarioRow row;
        row.name = sc.name;
        const auto& given = sc.evidence.clauses();
        row.variable_1 = given.empty() ? "-" : render_clause(given[0]);
        if (given.size() < 2) {
            row.variable_2 = "-";
        } else {
            for (std::size_t k = 1; k < given.size(); ++k) {
                row.variable_2 += (k > 1 ? " & " : "") + render_clause(given[k]);
            }
        }
        row.response = describe(sc.event);
        try {
            row.sampled = lw_query(network, sc.event, sc.evidence, sc.n_samples, sc.seed.value_or(base_seed + i));
            row.exact = exact_query(network, sc.event, sc.evidence).estimate;
        } catch (const Error& e) {
            row.error = e.what();
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::string format_report_text(const ScenarioReport& report) {
    const std::vector<std::string> header = {"Scenario", "Variable 1", "Variable 2", "Response", "Probability", "95% CI", "Exact"};
    std::vector<std::vector<std::string>> cells;
    for (const auto& r : report.rows) {
        std::vector<std::string> line = {r.name, r.variable_1, r.variable_2, r.response};
        if (r.error) {
            line.push_back("ERROR");
            line.push_back(*r.error);
            line.push_back("");
        } else {
            line.push_back(fixed(r.sampled->estimate));
            line.push_back("[" + fixed(r.sampled->ci_low) + ", " + fixed(r.sampled->ci_high) + "]");
            line.push_back(fixed(*r.exact) + (r.exact_within_ci() ? "" : " !"));
        }
        cells.push_back(std::move(line));
    }
    std::vector<std::size_t> width(header.size());
    for (std::size_t k = 0; k < header.size(); ++k) {
        width[k] = header[k].size();
        for (const auto& line : cells) width[k] = std::max(width[k], line[k].size());
    }
    std::ostringstream out;
    auto emit = [&](const std::vector<std::string>& line) {
        std::string text;
        for (std::size_t k = 0; k < line.size(); ++k) {
            text += line[k];
            if (k + 1 < line.size()) text += std::string(width[k] - line[k].size() + 2, ' ');
        }
        text.erase(text.find_last_not_of(' ') + 1);
        out << text << "\n";
    };
    emit(header);
    std::size_t total = 0;
    for (auto w : width) total += w + 2;
    out << std::string(total - 2, '-') << "\n";
    for (const auto& line : cells) emit(line);
    return out.str();
}

std::string format_report_tsv(const ScenarioReport& report) {
    std::ostringstream out;
    out << "scenario\tvariable_1\tvariable_2\tresponse\tprobability\tci_low\tci_high\tn_samples\texact\texact_in_ci\terror\n";
    for (const auto& r : report.rows) {
        out << r.name << '\t' << r.variable_1 << '\t' << r.variable_2 << '\t' << r.response << '\t';
        if (r.error) {
            out << "\t\t\t\t\t\t" << *r.error << "\n";
            continue;
        }
        out << fixed(r.sampled->estimate, 6) << '\t' << fixed(r.sampled->ci_low, 6) << '\t'
            << fixed(r.sampled->ci_high, 6) << '\t' << r.sampled->n_samples << '\t' << fixed(*r.exact, 6) << '\t'
            << (r.exact_within_ci() ? "yes" : "no") << "\t\n";
    }
    return out.str();
}

ReverseReport run_reverse_scenarios(const Network& network, const std::vector<ReverseDriver>& drivers,
                                    const QueryEvent& response) {
    ReverseReport report{describe(response), {}};
    for (const auto& d : drivers) {
        ReverseRow row{reverse_query(network, d.name, response), d.highlight, 0.0};
        row.highlight_mass = row.distribution.mass(d.highlight);
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::string format_reverse_text(const ReverseReport& report) {
    std::ostringstream out;
    out << "Driver distributions given " << report.response << "\n";
    for (const auto& r : report.rows) {
        const auto& dist = r.distribution;
        out << "  " << dist.driver << ":";
        for (std::size_t k = 0; k < dist.states.size(); ++k) {
            out << " " << dist.states[k] << "=" << fixed(dist.probabilities[k]);
        }
        if (!r.highlight.empty()) {
            out << "  | P(";
            for (std::size_t k = 0; k < r.highlight.size(); ++k) out << (k ? "," : "") << r.highlight[k];
            out << ") = " << fixed(r.highlight_mass);
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace turfbbn::pipeline
