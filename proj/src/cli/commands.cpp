#include "turfbbn/cli/commands.hpp"

#include "turfbbn/core/network_io.hpp"
#include "turfbbn/error.hpp"
#include "turfbbn/learn/search.hpp"
#include "turfbbn/pipeline/fishery_model.hpp"
#include "turfbbn/pipeline/ingest.hpp"
#include "turfbbn/pipeline/scenarios.hpp"
#include "turfbbn/pipeline/synth.hpp"
#include "turfbbn/service/api.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

namespace turfbbn::cli {

namespace {

void write_or_print(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
    } else {
        save_text_file(path, text);
    }
}

struct LearnArgs {
    std::string ma, sizes, constraints, out, dot;
    std::uint64_t seed = 0;
    std::size_t restarts = SearchConfig{}.restarts;
    std::size_t max_iterations = SearchConfig{}.max_iterations;
    std::size_t tabu = SearchConfig{}.tabu_list_length;
    std::size_t max_parents = SearchConfig{}.max_parents;
    double alpha = 1.0;
    bool no_expert = false;
};

int do_learn(const LearnArgs& a, std::ostream& out) {
    auto records = pipeline::ingest_ma_csv(a.ma);
    auto samples = pipeline::ingest_sizes_csv(a.sizes);

    pipeline::LearnOptions options;
    options.search.seed = a.seed;
    options.search.restarts = a.restarts;
    options.search.max_iterations = a.max_iterations;
    options.search.tabu_list_length = a.tabu;
    options.search.max_parents = a.max_parents;
    options.alpha = a.alpha;
    options.use_expert_constraints = !a.no_expert;
    if (!a.constraints.empty()) options.constraints = parse_constraints(read_text_file(a.constraints));

    auto result = pipeline::learn_pipeline(records, samples, options);
    save_text_file(a.out, serialize_network(result.network, result.strengths));
    if (!a.dot.empty()) save_text_file(a.dot, export_dot(result.network.dag(), result.strengths));

    std::ostringstream s;
    s << std::fixed << std::setprecision(4);
    s << "rows " << result.dataset.row_count() << ", variables " << result.dataset.variable_count() << "\n";
    s << "score " << result.structure.total_score << "\n";
    s << "edges " << result.network.dag().edges().size() << "\n";
    for (const auto& e : result.network.dag().named_edges()) {
        s << "  " << e.first << " -> " << e.second << "  strength " << result.strengths.at(e) << "\n";
    }
    out << s.str();
    return kExitOk;
}

struct ScenarioArgs {
    std::string network, scenarios, out, tsv;
    std::uint64_t seed = 1;
    std::optional<std::size_t> samples;
    bool reverse = false;
};

int do_scenarios(const ScenarioArgs& a, std::ostream& out) {
    auto doc = load_network_file(a.network);
    auto scenarios = pipeline::parse_scenarios(read_text_file(a.scenarios));
    if (a.samples) {
        for (auto& sc : scenarios) sc.n_samples = *a.samples;
    }
    auto report = pipeline::run_scenarios(doc.network, scenarios, a.seed);
    std::string text = pipeline::format_report_text(report);
    if (a.reverse) {
        auto rev = pipeline::run_reverse_scenarios(doc.network, pipeline::reverse_drivers(),
                                                   pipeline::default_good_state());
        text += "\n" + pipeline::format_reverse_text(rev);
    }
    write_or_print(a.out, text, out);
    if (!a.tsv.empty()) save_text_file(a.tsv, pipeline::format_report_tsv(report));
    return report.has_errors() ? kExitInputError : kExitOk;
}

struct ServeArgs {
    std::string network, scenarios, host = "127.0.0.1";
    int port = 8080;
    std::uint64_t seed = 1;
    std::size_t samples = pipeline::kDefaultScenarioSamples;
};

int do_serve(const ServeArgs& a, std::ostream& out, std::ostream& err) {
    auto doc = load_network_file(a.network);
    auto presets = a.scenarios.empty() ? pipeline::preset_scenarios()
                                       : pipeline::parse_scenarios(read_text_file(a.scenarios));
    service::QueryService svc(std::move(doc), std::move(presets), {a.seed, a.samples});
    service::HttpServer server(svc);
    int port = server.bind(a.host, a.port);
    if (port < 0) {
        err << "error: cannot bind " << a.host << ":" << a.port << "\n";
        return kExitInputError;
    }
    out << "listening on http://" << a.host << ":" << port << std::endl;
    server.listen();
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bayesian belief networks for TURF fishery monitoring data", "turfbbn"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "turfbbn 1.0.0");

    LearnArgs learn;
    auto* learn_cmd = app.add_subcommand("learn", "Learn structure and CPTs from field CSVs");
    learn_cmd->add_option("--ma", learn.ma, "MA records CSV")->required();
    learn_cmd->add_option("--sizes", learn.sizes, "Shell length CSV")->required();
    learn_cmd->add_option("--constraints", learn.constraints, "Edge constraint file (replaces the expert default)");
    learn_cmd->add_option("--out", learn.out, "Network JSON output")->required();
    learn_cmd->add_option("--dot", learn.dot, "Graphviz DOT output");
    learn_cmd->add_option("--seed", learn.seed, "Restart seed");
    learn_cmd->add_option("--restarts", learn.restarts, "Random restarts");
    learn_cmd->add_option("--max-iterations", learn.max_iterations, "Tabu iterations per run");
    learn_cmd->add_option("--tabu", learn.tabu, "Tabu list length");
    learn_cmd->add_option("--max-parents", learn.max_parents, "Parent limit per node");
    learn_cmd->add_option("--alpha", learn.alpha, "Dirichlet pseudo-count for CPTs");
    learn_cmd->add_flag("--no-expert", learn.no_expert, "Search without the expert link whitelist");

    ScenarioArgs sc;
    auto* sc_cmd = app.add_subcommand("scenarios", "Run conditional scenarios against a network");
    sc_cmd->add_option("network", sc.network, "Network JSON")->required();
    sc_cmd->add_option("scenarios", sc.scenarios, "Scenario file")->required();
    sc_cmd->add_option("--out", sc.out, "Text report (stdout when omitted)");
    sc_cmd->add_option("--tsv", sc.tsv, "Tab-separated report");
    sc_cmd->add_option("--seed", sc.seed, "Base seed; scenario i uses seed + i");
    sc_cmd->add_option("--samples", sc.samples, "Override per-scenario sample counts")->check(CLI::PositiveNumber);
    sc_cmd->add_flag("--reverse", sc.reverse, "Append driver distributions given the good resource state");

    ServeArgs serve;
    auto* serve_cmd = app.add_subcommand("serve", "Serve the query API over HTTP");
    serve_cmd->add_option("network", serve.network, "Network JSON")->required();
    serve_cmd->add_option("--scenarios", serve.scenarios, "Preset scenarios (default: the built-in table)");
    serve_cmd->add_option("--host", serve.host, "Bind address");
    serve_cmd->add_option("--port", serve.port, "Port (0 picks one)")->check(CLI::Range(0, 65535));
    serve_cmd->add_option("--seed", serve.seed, "Default sampler seed");
    serve_cmd->add_option("--samples", serve.samples, "Default sample count")->check(CLI::PositiveNumber);

    std::string dot_network, dot_out;
    auto* dot_cmd = app.add_subcommand("export-dot", "Write a network as Graphviz DOT");
    dot_cmd->add_option("network", dot_network, "Network JSON")->required();
    dot_cmd->add_option("--out", dot_out, "Output file (stdout when omitted)");

    std::string synth_ma, synth_sizes;
    std::uint64_t synth_seed = 2024;
    auto* synth_cmd = app.add_subcommand("synth-data", "Generate stand-in field CSVs");
    synth_cmd->add_option("--ma", synth_ma, "MA records CSV output")->required();
    synth_cmd->add_option("--sizes", synth_sizes, "Shell length CSV output")->required();
    synth_cmd->add_option("--seed", synth_seed, "Generator seed");

    std::string constraints_out;
    auto* cons_cmd = app.add_subcommand("constraints", "Print the expert edge constraints");
    cons_cmd->add_option("--out", constraints_out, "Output file (stdout when omitted)");

    std::string ref_out;
    std::size_t ref_rows = 1000;
    std::uint64_t ref_seed = 1;
    auto* ref_cmd = app.add_subcommand("reference", "Write the hand-built reference network");
    ref_cmd->add_option("--out", ref_out, "Output file (stdout when omitted)");
    ref_cmd->add_option("--rows", ref_rows, "Rows sampled to estimate edge strengths")->check(CLI::PositiveNumber);
    ref_cmd->add_option("--seed", ref_seed, "Sampling seed");

    std::string presets_out;
    auto* presets_cmd = app.add_subcommand("presets", "Print the built-in scenario table");
    presets_cmd->add_option("--out", presets_out, "Output file (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (*learn_cmd) return do_learn(learn, out);
        if (*sc_cmd) return do_scenarios(sc, out);
        if (*serve_cmd) return do_serve(serve, out, err);
        if (*dot_cmd) {
            auto doc = load_network_file(dot_network);
            write_or_print(dot_out, export_dot(doc.network.dag(), doc.strengths), out);
            return kExitOk;
        }
        if (*synth_cmd) {
            auto data = pipeline::synth_field_data(synth_seed);
            save_text_file(synth_ma, pipeline::format_ma_csv(data.records));
            save_text_file(synth_sizes, pipeline::format_sizes_csv(data.samples));
            return kExitOk;
        }
        if (*cons_cmd) {
            std::string text = "# Expert-plausible links; every other ordered pair is forbidden.\n" +
                               format_constraints(pipeline::expert_constraints(pipeline::default_variables()));
            write_or_print(constraints_out, text, out);
            return kExitOk;
        }
        if (*ref_cmd) {
            auto net = pipeline::reference_network();
            auto strengths = edge_strengths(pipeline::synth_dataset(net, ref_rows, ref_seed), net.dag());
            write_or_print(ref_out, serialize_network(net, strengths), out);
            return kExitOk;
        }
        if (*presets_cmd) {
            write_or_print(presets_out, pipeline::format_scenarios(pipeline::preset_scenarios()), out);
            return kExitOk;
        }
    } catch (const pipeline::IngestError& e) {
        err << "error: " << e.what() << "\n";
        for (const auto& issue : e.issues()) err << "  line " << issue.line << ": " << issue.message << "\n";
        return kExitInputError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternalError;
    }
    return kExitInternalError;
}

}  // namespace turfbbn::cli
