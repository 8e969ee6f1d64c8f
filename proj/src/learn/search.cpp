#include "turfbbn/learn/search.hpp"

#include "turfbbn/error.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <future>
#include <random>
#include <sstream>

namespace turfbbn {

namespace {

constexpr double kScoreEps = 1e-9;

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace

EdgeConstraints parse_constraints(std::string_view text) {
    EdgeConstraints out;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::string body = trim(line);
        if (body.empty()) continue;
        auto bad = [&](const std::string& why) {
            throw Error(ErrorCode::ParseError, "constraints line " + std::to_string(lineno) + ": " + why);
        };
        auto space = body.find_first_of(" \t");
        if (space == std::string::npos) bad("expected 'require|forbid parent -> child'");
        std::string verb = body.substr(0, space);
        std::string rest = body.substr(space + 1);
        auto arrow = rest.find("->");
        if (arrow == std::string::npos) bad("missing '->'");
        NamedEdge edge{trim(std::string_view(rest).substr(0, arrow)), trim(std::string_view(rest).substr(arrow + 2))};
        if (edge.first.empty() || edge.second.empty()) bad("empty variable name");
        if (verb == "require") {
            out.required.push_back(std::move(edge));
        } else if (verb == "forbid") {
            out.forbidden.push_back(std::move(edge));
        } else {
            bad("unknown directive '" + verb + "'");
        }
    }
    return out;
}

std::string format_constraints(const EdgeConstraints& constraints) {
    std::ostringstream out;
    for (const auto& [p, c] : constraints.required) out << "require " << p << " -> " << c << "\n";
    for (const auto& [p, c] : constraints.forbidden) out << "forbid " << p << " -> " << c << "\n";
    return out.str();
}

void SearchConfig::validate() const {
    if (tabu_list_length < 1) throw Error(ErrorCode::InvalidConfig, "tabu_list_length must be at least 1");
    if (max_parents < 1) throw Error(ErrorCode::InvalidConfig, "max_parents must be at least 1");
    for (const auto& r : required_edges) {
        if (std::find(forbidden_edges.begin(), forbidden_edges.end(), r) != forbidden_edges.end()) {
            throw Error(ErrorCode::InfeasibleConstraints,
                        "edge " + r.first + " -> " + r.second + " is both required and forbidden");
        }
    }
}

bool prefer(double score_a, const std::vector<Edge>& edges_a, double score_b, const std::vector<Edge>& edges_b) {
    if (score_a > score_b + kScoreEps) return true;
    if (score_b > score_a + kScoreEps) return false;
    if (edges_a.size() != edges_b.size()) return edges_a.size() < edges_b.size();
    return edges_a < edges_b;
}

namespace {

struct Graph {
    std::vector<ParentSet> parents;
    std::vector<double> family;
    double total = 0.0;

    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        for (std::size_t c = 0; c < parents.size(); ++c) {
            for (std::size_t p = 0; p < parents.size(); ++p) {
                if (parents[c] >> p & 1U) out.push_back({p, c});
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    bool has(std::size_t u, std::size_t v) const { return parents[v] >> u & 1U; }
};

ParentSet bit(std::size_t i) { return ParentSet{1} << i; }

ParentSet ancestors(const std::vector<ParentSet>& parents, std::size_t x) {
    ParentSet seen = 0;
    ParentSet frontier = parents[x];
    while (frontier) {
        std::size_t p = static_cast<std::size_t>(std::countr_zero(frontier));
        frontier &= frontier - 1;
        if (seen & bit(p)) continue;
        seen |= bit(p);
        frontier |= parents[p] & ~seen;
    }
    return seen;
}

enum class MoveKind { Delete = 0, Reverse = 1, Add = 2 };

struct Move {
    MoveKind kind;
    std::size_t u;
    std::size_t v;

    Move inverse() const {
        switch (kind) {
        case MoveKind::Add: return {MoveKind::Delete, u, v};
        case MoveKind::Delete: return {MoveKind::Add, u, v};
        case MoveKind::Reverse: break;
        }
        return {MoveKind::Reverse, v, u};
    }
    friend bool operator==(const Move&, const Move&) = default;
    // Fewer resulting edges first, then lexicographic.
    auto key() const { return std::tuple(static_cast<int>(kind), u, v); }
};

class TabuRunner {
public:
    TabuRunner(FamilyScoreCache& cache, const SearchConfig& config, std::vector<std::vector<bool>> required,
               std::vector<std::vector<bool>> forbidden)
        : cache_(cache), config_(config), required_(std::move(required)), forbidden_(std::move(forbidden)),
          n_(required_.size()) {}

    Graph make_graph(std::vector<ParentSet> parents) const {
        Graph g;
        g.parents = std::move(parents);
        g.family.resize(n_);
        for (std::size_t v = 0; v < n_; ++v) {
            g.family[v] = cache_.score(v, g.parents[v]);
            g.total += g.family[v];
        }
        return g;
    }

    bool can_add(const Graph& g, std::size_t u, std::size_t v) const {
        if (g.has(u, v) || g.has(v, u) || forbidden_[u][v]) return false;
        if (static_cast<std::size_t>(std::popcount(g.parents[v])) >= config_.max_parents) return false;
        return !(ancestors(g.parents, u) & bit(v));
    }

    bool can_reverse(const Graph& g, std::size_t u, std::size_t v) const {
        if (!g.has(u, v) || required_[u][v] || forbidden_[v][u]) return false;
        if (static_cast<std::size_t>(std::popcount(g.parents[u])) >= config_.max_parents) return false;
        auto parents = g.parents;
        parents[v] &= ~bit(u);
        return !(ancestors(parents, v) & bit(u));
    }

    // Random feasible edge additions used to diversify restart points.
    Graph perturb(const Graph& start, std::mt19937_64& rng) const {
        Graph g = start;
        if (n_ < 2) return g;
        std::uniform_int_distribution<std::size_t> pick(0, n_ - 1);
        std::size_t added = 0;
        for (std::size_t attempt = 0; attempt < 50 * n_ && added < n_; ++attempt) {
            std::size_t u = pick(rng);
            std::size_t v = pick(rng);
            if (u == v || !can_add(g, u, v)) continue;
            g.parents[v] |= bit(u);
            ++added;
        }
        return make_graph(std::move(g.parents));
    }

    Graph run(Graph current) const {
        Graph best = current;
        auto best_edges = best.edges();
        std::deque<Move> tabu;

        for (std::size_t iter = 0; iter < config_.max_iterations; ++iter) {
            std::optional<Move> chosen;
            double chosen_delta = 0.0;
            double chosen_child_score = 0.0;
            double chosen_parent_score = 0.0;

            auto consider = [&](Move m, double delta, double child_score, double parent_score) {
                bool is_tabu = std::find(tabu.begin(), tabu.end(), m.inverse()) != tabu.end();
                if (is_tabu && !(current.total + delta > best.total + kScoreEps)) return;
                bool better = !chosen || delta > chosen_delta + kScoreEps ||
                              (delta >= chosen_delta - kScoreEps && m.key() < chosen->key());
                if (better) {
                    chosen = m;
                    chosen_delta = delta;
                    chosen_child_score = child_score;
                    chosen_parent_score = parent_score;
                }
            };

            for (std::size_t u = 0; u < n_; ++u) {
                for (std::size_t v = 0; v < n_; ++v) {
                    if (u == v) continue;
                    if (current.has(u, v)) {
                        if (!required_[u][v]) {
                            double s = cache_.score(v, current.parents[v] & ~bit(u));
                            consider({MoveKind::Delete, u, v}, s - current.family[v], s, 0.0);
                        }
                        if (can_reverse(current, u, v)) {
                            double sv = cache_.score(v, current.parents[v] & ~bit(u));
                            double su = cache_.score(u, current.parents[u] | bit(v));
                            consider({MoveKind::Reverse, u, v}, sv - current.family[v] + su - current.family[u], sv, su);
                        }
                    } else if (can_add(current, u, v)) {
                        double s = cache_.score(v, current.parents[v] | bit(u));
                        consider({MoveKind::Add, u, v}, s - current.family[v], s, 0.0);
                    }
                }
            }
            if (!chosen) break;

            const Move m = *chosen;
            switch (m.kind) {
            case MoveKind::Add:
                current.parents[m.v] |= bit(m.u);
                current.family[m.v] = chosen_child_score;
                break;
            case MoveKind::Delete:
                current.parents[m.v] &= ~bit(m.u);
                current.family[m.v] = chosen_child_score;
                break;
            case MoveKind::Reverse:
                current.parents[m.v] &= ~bit(m.u);
                current.parents[m.u] |= bit(m.v);
                current.family[m.v] = chosen_child_score;
                current.family[m.u] = chosen_parent_score;
                break;
            }
            current.total = 0.0;
            for (double f : current.family) current.total += f;

            tabu.push_back(m);
            if (tabu.size() > config_.tabu_list_length) tabu.pop_front();

            if (current.total > best.total - kScoreEps) {
                auto edges = current.edges();
                if (prefer(current.total, edges, best.total, best_edges)) {
                    best = current;
                    best_edges = std::move(edges);
                }
            }
        }
        return best;
    }

private:
    FamilyScoreCache& cache_;
    const SearchConfig& config_;
    std::vector<std::vector<bool>> required_;
    std::vector<std::vector<bool>> forbidden_;
    std::size_t n_;
};

ScoredDag to_scored(const DiscreteDataset& data, const std::vector<Edge>& edges, FamilyScoreCache& cache) {
    Dag dag(data.variables(), edges);
    ScoredDag out{dag, 0.0, {}};
    for (std::size_t v = 0; v < dag.size(); ++v) {
        ParentSet ps = 0;
        for (std::size_t p : dag.parents(v)) ps |= bit(p);
        double s = cache.score(v, ps);
        out.family_scores[dag.variable(v).name] = s;
        out.total_score += s;
    }
    return out;
}

std::vector<std::vector<bool>> edge_matrix(const DiscreteDataset& data, const std::vector<NamedEdge>& edges) {
    std::vector<std::vector<bool>> m(data.variable_count(), std::vector<bool>(data.variable_count(), false));
    for (const auto& [p, c] : edges) m[data.index_of(p)][data.index_of(c)] = true;
    return m;
}

}  // namespace

ScoredDag tabu_search(const DiscreteDataset& data, const SearchConfig& config, const ScoreFunction& score) {
    data.require_rows();
    config.validate();
    const std::size_t n = data.variable_count();
    auto required = edge_matrix(data, config.required_edges);
    auto forbidden = edge_matrix(data, config.forbidden_edges);

    std::vector<ParentSet> start(n, 0);
    std::vector<Edge> required_list;
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
            if (!required[u][v]) continue;
            if (u == v) throw Error(ErrorCode::InfeasibleConstraints, "required self-edge on '" + data.variable(u).name + "'");
            start[v] |= bit(u);
            required_list.push_back({u, v});
        }
    }
    try {
        topological_order(n, required_list);
    } catch (const Error&) {
        throw Error(ErrorCode::InfeasibleConstraints, "required edges form a cycle");
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (static_cast<std::size_t>(std::popcount(start[v])) > config.max_parents) {
            throw Error(ErrorCode::InfeasibleConstraints,
                        "'" + data.variable(v).name + "' has more required parents than max_parents");
        }
    }

    FamilyScoreCache cache(data, score);
    TabuRunner runner(cache, config, std::move(required), std::move(forbidden));
    Graph origin = runner.make_graph(start);

    std::vector<std::future<Graph>> runs;
    runs.push_back(std::async(std::launch::async, [&] { return runner.run(origin); }));
    for (std::size_t r = 1; r <= config.restarts; ++r) {
        runs.push_back(std::async(std::launch::async, [&, r] {
            std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                              static_cast<std::uint32_t>(r)};
            std::mt19937_64 rng(seq);
            return runner.run(runner.perturb(origin, rng));
        }));
    }

    // Results are merged in restart order so the outcome is independent of
    // thread scheduling.
    Graph best = runs.front().get();
    auto best_edges = best.edges();
    for (std::size_t r = 1; r < runs.size(); ++r) {
        Graph g = runs[r].get();
        auto edges = g.edges();
        if (prefer(g.total, edges, best.total, best_edges)) {
            best = std::move(g);
            best_edges = std::move(edges);
        }
    }
    return to_scored(data, best_edges, cache);
}

std::vector<std::vector<Edge>> enumerate_dags(std::size_t n) {
    if (n > 5) throw Error(ErrorCode::TooManyVariables, "DAG enumeration supports at most 5 nodes");
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    }
    std::size_t total = 1;
    for (std::size_t k = 0; k < pairs.size(); ++k) total *= 3;

    // Each unordered pair is absent, i->j, or j->i; 2-cycles never arise.
    std::vector<std::vector<Edge>> out;
    for (std::size_t code = 0; code < total; ++code) {
        std::vector<Edge> edges;
        std::size_t c = code;
        for (const auto& [i, j] : pairs) {
            std::size_t d = c % 3;
            c /= 3;
            if (d == 1) edges.push_back({i, j});
            if (d == 2) edges.push_back({j, i});
        }
        try {
            topological_order(n, edges);
        } catch (const Error&) {
            continue;
        }
        std::sort(edges.begin(), edges.end());
        out.push_back(std::move(edges));
    }
    return out;
}

ScoredDag exhaustive_search(const DiscreteDataset& data, std::size_t max_vars, const ScoreFunction& score) {
    if (max_vars > 5) throw Error(ErrorCode::TooManyVariables, "exhaustive search supports at most 5 variables");
    if (data.variable_count() > max_vars) {
        throw Error(ErrorCode::TooManyVariables, std::to_string(data.variable_count()) + " variables exceed the limit of " +
                                                     std::to_string(max_vars));
    }
    data.require_rows();
    FamilyScoreCache cache(data, score);
    const std::size_t n = data.variable_count();

    std::optional<std::vector<Edge>> best;
    double best_score = 0.0;
    for (auto& edges : enumerate_dags(n)) {
        std::vector<ParentSet> parents(n, 0);
        for (const auto& e : edges) parents[e.child] |= bit(e.parent);
        double total = 0.0;
        for (std::size_t v = 0; v < n; ++v) total += cache.score(v, parents[v]);
        if (!best || prefer(total, edges, best_score, *best)) {
            best = std::move(edges);
            best_score = total;
        }
    }
    return to_scored(data, *best, cache);
}

}  // namespace turfbbn
