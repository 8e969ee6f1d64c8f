// Acceptance suite: one PASS/FAIL line per headline criterion.
// Exit status is non-zero when any criterion fails.

#include "oracles.hpp"

#include "turfbbn/cli/commands.hpp"
#include "turfbbn/core/network_io.hpp"
#include "turfbbn/fishery/enforcement.hpp"
#include "turfbbn/fishery/metrics.hpp"
#include "turfbbn/fishery/wilcoxon.hpp"
#include "turfbbn/infer/query.hpp"
#include "turfbbn/learn/fit.hpp"
#include "turfbbn/learn/search.hpp"
#include "turfbbn/pipeline/fishery_model.hpp"
#include "turfbbn/pipeline/scenarios.hpp"
#include "turfbbn/pipeline/synth.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

using namespace turfbbn;
namespace fs = std::filesystem;

namespace tol {
constexpr double kScoreMatch = 1e-6;
constexpr double kSearchSeconds = 10.0;
constexpr std::size_t kStructureDatasets = 24;
constexpr std::size_t kLwSeeds = 50;
constexpr std::size_t kLwSamples = 2000;
constexpr double kLwMeanError = 0.01;
constexpr double kLwSeedError = 0.05;
constexpr double kLwSeedFraction = 0.95;
constexpr double kBayes = 1e-9;
constexpr double kExactP = 1e-12;
constexpr std::size_t kExactLayoutN = 10;
constexpr std::size_t kApproxN = 12;
constexpr double kApproxP = 0.01;
constexpr double kPipelineSeconds = 30.0;
constexpr double kNormalization = 1e-9;
}  // namespace tol

namespace {

const std::string kData = TURFBBN_SOURCE_DIR "/data/";

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(bool ok, const std::string& name, const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << "  " << name << "  (" << detail << ")" << std::endl;
    if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

// Small networks the Bayes and normalisation checks run over.
std::vector<Network> small_corpus() {
    std::vector<Network> out;
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        out.push_back(oracle::random_network(2 + seed % 4, 2 + seed % 3, seed * 13, 0.3 + 0.1 * (seed % 6)));
    }
    Variable a{"A", {"T", "F"}, VariableKind::Nominal}, b{"B", {"T", "F"}, VariableKind::Nominal};
    out.push_back(build_network(Dag({a, b}, std::vector<NamedEdge>{{"A", "B"}}),
                                {{"A", {}, {{0.7, 0.3}}}, {"B", {"A"}, {{0.9, 0.1}, {0.2, 0.8}}}}));
    out.push_back(build_network(Dag({a, b}, std::vector<NamedEdge>{}),
                                {{"A", {}, {{0.7, 0.3}}}, {"B", {}, {{0.4, 0.6}}}}));
    return out;
}

// Response events over variable r: each single state, plus the first two together.
std::vector<QueryEvent> events_for(const Variable& r) {
    std::vector<QueryEvent> out;
    for (const auto& s : r.states) {
        StateConstraints c;
        c.add(r.name, {s});
        out.emplace_back(c);
    }
    if (r.cardinality() >= 3) {
        StateConstraints c;
        c.add(r.name, {r.states[0], r.states[1]});
        out.emplace_back(c);
    }
    return out;
}

Network fitted_fishery_network() {
    auto ref = pipeline::reference_network();
    auto data = pipeline::synth_dataset(ref, 24, 2024);
    return fit_cpts(data, ref.dag(), 1.0);
}

void structure_oracle() {
    std::size_t matches = 0;
    double worst_gap = 0.0, slowest = 0.0;
    for (std::uint64_t seed = 1; seed <= tol::kStructureDatasets; ++seed) {
        std::size_t vars = 2 + seed % 3;
        std::size_t states = 2 + seed % 3;
        std::size_t rows = 100 + (seed * 97) % 901;
        auto data = pipeline::synth_dataset(oracle::random_network(vars, states, seed, 0.6), rows, seed + 500);
        SearchConfig config;
        config.seed = seed;
        auto t0 = Clock::now();
        auto tabu = tabu_search(data, config);
        double t = seconds_since(t0);
        auto best = exhaustive_search(data);
        double gap = std::abs(tabu.total_score - best.total_score);
        worst_gap = std::max(worst_gap, gap);
        slowest = std::max(slowest, t);
        if (gap <= tol::kScoreMatch && t < tol::kSearchSeconds) ++matches;
    }
    report(matches == tol::kStructureDatasets, "structure-learning oracle: tabu score equals exhaustive score",
           fmt("%.0f/%.0f datasets, worst gap %.2e, slowest search %.3f s", double(matches),
               double(tol::kStructureDatasets), worst_gap, slowest));
}

void inference_oracle() {
    auto net = fitted_fishery_network();
    auto scenarios = pipeline::parse_scenarios(read_text_file(kData + "presets.scenarios"));
    bool ok = !scenarios.empty();
    double worst_mean = 0.0, worst_fraction = 1.0;
    for (const auto& sc : scenarios) {
        double exact = exact_query(net, sc.event, sc.evidence).estimate;
        double sum = 0.0;
        std::size_t close = 0;
        for (std::uint64_t seed = 1; seed <= tol::kLwSeeds; ++seed) {
            double est = lw_query(net, sc.event, sc.evidence, tol::kLwSamples, seed).estimate;
            sum += est;
            if (std::abs(est - exact) <= tol::kLwSeedError) ++close;
        }
        double mean_err = std::abs(sum / tol::kLwSeeds - exact);
        double fraction = double(close) / tol::kLwSeeds;
        worst_mean = std::max(worst_mean, mean_err);
        worst_fraction = std::min(worst_fraction, fraction);
        ok = ok && mean_err <= tol::kLwMeanError && fraction >= tol::kLwSeedFraction;
    }
    report(ok, "inference oracle: likelihood weighting vs exact on the shipped scenarios",
           fmt("%.0f scenarios, worst |mean - exact| %.4f, worst per-seed coverage %.2f", double(scenarios.size()),
               worst_mean, worst_fraction));
}

void bayes_consistency() {
    std::size_t checks = 0;
    double worst = 0.0;
    for (const auto& net : small_corpus()) {
        const auto& vars = net.dag().variables();
        for (const auto& driver : vars) {
            for (const auto& response : vars) {
                if (response.name == driver.name) continue;
                for (const auto& event : events_for(response)) {
                    auto got = reverse_query(net, driver.name, event);
                    auto want = oracle::driver_posterior(net, driver.name, event);
                    for (std::size_t k = 0; k < want.size(); ++k)
                        worst = std::max(worst, std::abs(got.probabilities[k] - want[k]));
                    ++checks;
                }
            }
        }
    }
    report(worst <= tol::kBayes, "Bayes consistency: reverse_query vs joint-table posteriors",
           fmt("%.0f reverse queries on networks of 2-5 nodes, worst deviation %.2e", double(checks), worst));
}

std::vector<double> random_sample(std::mt19937_64& rng, std::size_t n, int spread) {
    std::uniform_int_distribution<int> d(0, spread);
    std::vector<double> v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

void wilcoxon_exactness() {
    using namespace fishery;
    std::mt19937_64 rng(99);
    double worst_exact = 0.0;
    std::size_t layouts = 0;
    // Every split of up to ten observations, with tie-free and tied data.
    for (std::size_t n = 2; n <= tol::kExactLayoutN; ++n) {
        for (std::size_t n1 = 1; n1 < n; ++n1) {
            for (int spread : {1000, 4}) {
                for (int rep = 0; rep < 5; ++rep) {
                    auto x = random_sample(rng, n1, spread), y = random_sample(rng, n - n1, spread);
                    double p = wilcoxon_test(x, y, WilcoxonMode::RankSum, PValueMethod::Exact).p_value;
                    worst_exact = std::max(worst_exact, std::abs(p - oracle::rank_sum_p_enumerated(x, y)));
                    ++layouts;
                }
            }
        }
        for (int spread : {1000, 3}) {
            for (int rep = 0; rep < 5; ++rep) {
                auto x = random_sample(rng, n, spread), y = random_sample(rng, n, spread);
                bool nonzero = false;
                for (std::size_t i = 0; i < n; ++i) nonzero = nonzero || x[i] != y[i];
                if (!nonzero) continue;
                double p = wilcoxon_test(x, y, WilcoxonMode::SignedRank, PValueMethod::Exact).p_value;
                worst_exact = std::max(worst_exact, std::abs(p - oracle::signed_rank_p_enumerated(x, y)));
                ++layouts;
            }
        }
    }

    // Normal path at twelve observations: every attainable statistic for every
    // rank-sum split (tie-free ranks 1..12) and every signed-rank sign pattern.
    const std::size_t n = tol::kApproxN;
    double worst_approx = 0.0;
    std::size_t approx_cases = 0;
    std::vector<double> worst_by_split(n, 0.0);
    for (std::size_t n1 = 1; n1 < n; ++n1) {
        std::map<int, std::uint64_t> representative;  // rank sum -> subset
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            if (static_cast<std::size_t>(__builtin_popcountll(mask)) != n1) continue;
            int r = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (mask >> i & 1) r += static_cast<int>(i) + 1;
            representative.emplace(r, mask);
        }
        for (const auto& [r, mask] : representative) {
            std::vector<double> x, y;
            for (std::size_t i = 0; i < n; ++i) (mask >> i & 1 ? x : y).push_back(static_cast<double>(i + 1));
            double p = wilcoxon_test(x, y, WilcoxonMode::RankSum, PValueMethod::Normal).p_value;
            double gap = std::abs(p - oracle::rank_sum_p_enumerated(x, y));
            worst_approx = std::max(worst_approx, gap);
            worst_by_split[n1] = std::max(worst_by_split[n1], gap);
            ++approx_cases;
        }
    }
    std::map<int, std::uint64_t> by_v;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        int v = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) v += static_cast<int>(i) + 1;
        by_v.emplace(v, mask);
    }
    double worst_signed = 0.0;
    for (const auto& [v, mask] : by_v) {
        std::vector<double> x, y(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) x.push_back((mask >> i & 1 ? 1.0 : -1.0) * static_cast<double>(i + 1));
        double p = wilcoxon_test(x, y, WilcoxonMode::SignedRank, PValueMethod::Normal).p_value;
        worst_signed = std::max(worst_signed, std::abs(p - oracle::signed_rank_p_enumerated(x, y)));
        ++approx_cases;
    }
    worst_approx = std::max(worst_approx, worst_signed);
    std::string detail = fmt("%.0f exact layouts worst %.2e; %.0f normal cases worst %.4f", double(layouts),
                             worst_exact, double(approx_cases), worst_approx);
    detail += fmt(" [rank-sum 1+11 %.4f, 3+9 %.4f, 6+6 %.4f; signed-rank %.4f]", worst_by_split[1],
                  worst_by_split[3], worst_by_split[6], worst_signed);
    report(worst_exact <= tol::kExactP && worst_approx <= tol::kApproxP,
           "Wilcoxon exactness: exact path vs enumeration (n <= 10), normal path at n = 12", detail);
}

void domain_rules() {
    using namespace fishery;
    bool leaves = rank_enforcement({Surveyor::None, std::nullopt}) == 1 &&
                  rank_enforcement({Surveyor::Fishers, Schedule::Occasional}) == 2 &&
                  rank_enforcement({Surveyor::Fishers, Schedule::Daily8h}) == 3 &&
                  rank_enforcement({Surveyor::Fishers, Schedule::Daily24h}) == 4 &&
                  rank_enforcement({Surveyor::Hired, Schedule::Daily24h}) == 5;
    bool effective = effective_enforcement(5, true, true) == 3 && effective_enforcement(1, true, true) == 1 &&
                     effective_enforcement(2, true, true) == 1;

    // Chungungo pattern: both MAs hold more undersized limpets than the OA.
    auto vec = [](std::size_t n, std::size_t below) {
        std::vector<double> v;
        for (std::size_t i = 0; i < n; ++i) v.push_back(i < below ? 50.0 + double(i % 14) : 65.0 + double(i % 20));
        return v;
    };
    auto ma1 = vec(200, 124), ma2 = vec(200, 142), oa = vec(200, 82);
    double p1 = illegal_proportion(ma1), p2 = illegal_proportion(ma2), po = illegal_proportion(oa);
    bool chungungo = std::abs(p1 - 0.62) < 1e-12 && std::abs(p2 - 0.71) < 1e-12 && std::abs(po - 0.41) < 1e-12 &&
                     p2 > p1 && p1 > po;
    // And on the generated field data.
    auto field = pipeline::synth_field_data(2024);
    std::vector<double> chung_ma, chung_oa;
    for (const auto& s : field.samples) {
        if (s.cove != "Chungungo") continue;
        if (s.regime == Regime::OA) chung_oa.push_back(illegal_proportion(s.lengths_mm));
        else chung_ma.push_back(illegal_proportion(s.lengths_mm));
    }
    bool field_pattern = chung_oa.size() == 1 && chung_ma.size() == 2;
    for (double m : chung_ma) field_pattern = field_pattern && m > chung_oa.at(0);

    std::vector<double> same{60, 64, 66, 70, 81};
    bool e_hat = relative_median_size(same, same) == 0.5;

    report(leaves && effective && chungungo && field_pattern && e_hat, "domain rules",
           std::string("ranking leaves ") + (leaves ? "ok" : "wrong") + ", effective rank " +
               (effective ? "ok" : "wrong") + fmt(", Chungungo %.2f/%.2f vs %.2f", p1, p2, po) +
               (field_pattern ? " (field data agrees)" : " (field data disagrees)") + ", identical e_hat " +
               (e_hat ? "0.5" : "wrong"));
}

void pipeline_determinism() {
    auto run = [](std::vector<std::string> args) {
        args.insert(args.begin(), "turfbbn");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        return std::make_pair(code, out.str() + err.str());
    };
    auto base = fs::temp_directory_path() / "turfbbn_acceptance";
    fs::remove_all(base);
    std::vector<std::string> outputs[2];
    double slowest = 0.0;
    bool ok = true;
    for (int pass = 0; pass < 2; ++pass) {
        auto dir = base / std::to_string(pass);
        fs::create_directories(dir);
        auto t0 = Clock::now();
        auto learn = run({"learn", "--ma", kData + "ma_records.csv", "--sizes", kData + "sizes.csv", "--constraints",
                          kData + "fishery.constraints", "--seed", "42", "--out", (dir / "net.json").string(),
                          "--dot", (dir / "net.dot").string()});
        auto sc = run({"scenarios", (dir / "net.json").string(), kData + "presets.scenarios", "--seed", "7",
                       "--reverse", "--out", (dir / "report.txt").string(), "--tsv", (dir / "report.tsv").string()});
        slowest = std::max(slowest, seconds_since(t0));
        ok = ok && learn.first == 0 && sc.first == 0;
        outputs[pass] = {learn.second, sc.second};
        for (const char* f : {"net.json", "net.dot", "report.txt", "report.tsv"}) {
            outputs[pass].push_back(fs::exists(dir / f) ? read_text_file((dir / f).string()) : std::string());
        }
    }
    bool identical = outputs[0] == outputs[1];
    report(ok && identical && slowest < tol::kPipelineSeconds, "pipeline determinism: learn + scenarios",
           std::string(identical ? "byte-identical" : "outputs differ") + fmt(" across 2 runs, slowest %.3f s", slowest));
}

void normalization_suite() {
    std::vector<Network> corpus = small_corpus();
    corpus.push_back(pipeline::reference_network());
    corpus.push_back(fitted_fishery_network());
    corpus.push_back(load_network_file(kData + "reference_network.json").network);
    {
        pipeline::LearnOptions options;
        corpus.push_back(pipeline::learn_pipeline(pipeline::synth_field_data(2024).records,
                                                  pipeline::synth_field_data(2024).samples, options)
                             .network);
    }
    double worst_row = 0.0, worst_dist = 0.0;
    std::size_t rows = 0, dists = 0;
    for (const auto& net : corpus) {
        for (const auto& cpt : net.cpts()) {
            for (const auto& row : cpt.rows) {
                worst_row = std::max(worst_row, std::abs(std::accumulate(row.begin(), row.end(), 0.0) - 1.0));
                ++rows;
            }
        }
        if (net.size() > 9) continue;
        const auto& vars = net.dag().variables();
        for (const auto& driver : vars) {
            for (const auto& response : vars) {
                if (response.name == driver.name) continue;
                for (const auto& event : events_for(response)) {
                    auto d = reverse_query(net, driver.name, event);
                    worst_dist = std::max(
                        worst_dist, std::abs(std::accumulate(d.probabilities.begin(), d.probabilities.end(), 0.0) - 1.0));
                    ++dists;
                }
            }
        }
    }
    report(worst_row <= tol::kNormalization && worst_dist <= tol::kNormalization,
           "normalization: CPT rows and reverse_query distributions sum to 1",
           fmt("%.0f rows worst %.2e; %.0f distributions worst %.2e", double(rows), worst_row, double(dists),
               worst_dist));
}

}  // namespace

int main() {
    const std::pair<const char*, void (*)()> criteria[] = {
        {"structure", structure_oracle},  {"inference", inference_oracle}, {"bayes", bayes_consistency},
        {"wilcoxon", wilcoxon_exactness}, {"domain", domain_rules},        {"pipeline", pipeline_determinism},
        {"normalization", normalization_suite},
    };
    for (const auto& [name, check] : criteria) {
        try {
            check();
        } catch (const std::exception& e) {
            report(false, name, std::string("threw: ") + e.what());
        }
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
