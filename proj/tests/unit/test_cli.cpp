#include "doctest.h"

#include "turfbbn/cli/commands.hpp"
#include "turfbbn/core/network_io.hpp"
#include "turfbbn/pipeline/fishery_model.hpp"

#include <filesystem>
#include <sstream>

namespace fs = std::filesystem;
using namespace turfbbn;

namespace {

const std::string kData = TURFBBN_SOURCE_DIR "/data/";

struct Run {
    int code;
    std::string out, err;
};

Run turfbbn_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "turfbbn");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / ("turfbbn_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("learn then scenarios") {
    auto dir = scratch("learn");
    auto net = (dir / "net.json").string();
    auto r = turfbbn_cli({"learn", "--ma", kData + "ma_records.csv", "--sizes", kData + "sizes.csv", "--out", net, "--dot",
                  (dir / "net.dot").string(), "--seed", "3"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("score ") != std::string::npos);
    CHECK(load_network_file(net).network.size() <= 9);
    CHECK(read_text_file((dir / "net.dot").string()).rfind("digraph", 0) == 0);

    auto s = turfbbn_cli({"scenarios", net, kData + "presets.scenarios", "--tsv", (dir / "r.tsv").string()});
    CHECK(s.code == 0);
    CHECK(s.out.find("Sce. 7") != std::string::npos);
    auto tsv = read_text_file((dir / "r.tsv").string());
    CHECK(std::count(tsv.begin(), tsv.end(), '\n') == 8);

    auto rev = turfbbn_cli({"scenarios", net, kData + "presets.scenarios", "--reverse", "--samples", "100"});
    CHECK(rev.code == 0);
    CHECK(rev.out.find("Driver distributions given") != std::string::npos);
}

TEST_CASE("scenario edge cases") {
    auto dir = scratch("scen");
    auto net = (dir / "ref.json").string();
    save_text_file(net, serialize_network(pipeline::reference_network()));
    auto empty = (dir / "empty.scenarios").string();
    save_text_file(empty, "# none\n");
    CHECK(turfbbn_cli({"scenarios", net, empty}).code == 0);

    auto typo = (dir / "typo.scenarios").string();
    save_text_file(typo, "scenario Broken\n  given distanse in {close}\n  event e_hat in {gt_0.59}\n"
                         "scenario Fine\n  event e_hat in {gt_0.59}\n");
    auto r = turfbbn_cli({"scenarios", net, typo});
    CHECK(r.code == 1);
    CHECK(r.out.find("Broken") != std::string::npos);
    CHECK(r.out.find("Fine") != std::string::npos);
}

TEST_CASE("exit codes for bad input") {
    auto dir = scratch("bad");
    CHECK(turfbbn_cli({}).code == 1);
    CHECK(turfbbn_cli({"frobnicate"}).code == 1);
    CHECK(turfbbn_cli({"export-dot", (dir / "missing.json").string()}).code == 1);
    auto cons = (dir / "cyc.constraints").string();
    save_text_file(cons, "require distance -> e_hat\nrequire e_hat -> distance\n");
    auto r = turfbbn_cli({"learn", "--ma", kData + "ma_records.csv", "--sizes", kData + "sizes.csv", "--constraints", cons,
                  "--out", (dir / "n.json").string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("InfeasibleConstraints") != std::string::npos);
    auto bad_csv = (dir / "bad.csv").string();
    save_text_file(bad_csv, "cove,ma_id\nX,MA1\n");
    auto b = turfbbn_cli({"learn", "--ma", bad_csv, "--sizes", kData + "sizes.csv", "--out", (dir / "n.json").string()});
    CHECK(b.code == 1);
    CHECK(b.err.find("missing column") != std::string::npos);
    CHECK(turfbbn_cli({"--help"}).code == 0);
}

TEST_CASE("generators reproduce the shipped files") {
    auto dir = scratch("gen");
    REQUIRE(turfbbn_cli({"synth-data", "--ma", (dir / "ma.csv").string(), "--sizes", (dir / "s.csv").string(), "--seed",
                 "2024"})
                .code == 0);
    CHECK(read_text_file((dir / "ma.csv").string()) == read_text_file(kData + "ma_records.csv"));
    CHECK(read_text_file((dir / "s.csv").string()) == read_text_file(kData + "sizes.csv"));
    CHECK(turfbbn_cli({"constraints"}).out == read_text_file(kData + "fishery.constraints"));
    CHECK(turfbbn_cli({"presets"}).out == read_text_file(kData + "presets.scenarios"));
    CHECK(turfbbn_cli({"reference"}).out == read_text_file(kData + "reference_network.json"));
    auto dot = turfbbn_cli({"export-dot", kData + "reference_network.json"});
    CHECK(dot.code == 0);
    CHECK(dot.out.find("\"enforcement\" -> \"effectiveness\"") != std::string::npos);
}
