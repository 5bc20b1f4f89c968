#include "ectf/search.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "ectf/extension.hpp"
#include "ectf/graph6.hpp"
#include "ectf/rng.hpp"
#include "ectf/version.hpp"

namespace ectf {

namespace {

int edge_index(int i, int j) {  // requires i < j
    return j * (j - 1) / 2 + i;
}

std::vector<std::pair<int, int>> all_pairs(int n) {
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<size_t>(n) * (static_cast<size_t>(n) - 1) / 2);
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) pairs.emplace_back(i, j);
    return pairs;
}

uint64_t apply_edge_map(const std::vector<int>& map, uint64_t mask) {
    uint64_t out = 0;
    while (mask) {
        int e = std::countr_zero(mask);
        out |= 1ull << map[static_cast<size_t>(e)];
        mask &= mask - 1;
    }
    return out;
}

/// One edge-index relabeling table per permutation of [0, n).
std::vector<std::vector<int>> edge_maps(int n) {
    std::vector<int> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> maps;
    do {
        std::vector<int> map(static_cast<size_t>(n) * (static_cast<size_t>(n) - 1) / 2);
        for (int j = 1; j < n; ++j)
            for (int i = 0; i < j; ++i) {
                int pi = perm[static_cast<size_t>(i)], pj = perm[static_cast<size_t>(j)];
                map[static_cast<size_t>(edge_index(i, j))] =
                    edge_index(std::min(pi, pj), std::max(pi, pj));
            }
        maps.push_back(std::move(map));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return maps;
}

/// Masks that are minimal in their orbit, ascending: the unseen-first sweep
/// marks each whole orbit, so a mask still unseen is its orbit's minimum.
std::vector<uint64_t> canonical_masks(int n) {
    const int e = n * (n - 1) / 2;
    const auto maps = edge_maps(n);
    std::vector<bool> seen(1ull << e, false);
    std::vector<uint64_t> out;
    for (uint64_t mask = 0; mask < (1ull << e); ++mask) {
        if (seen[mask]) continue;
        out.push_back(mask);
        for (const auto& map : maps) seen[apply_edge_map(map, mask)] = true;
    }
    return out;
}

int general_completeness_level(const Graph& g) {
    int level = 0;
    for (int k = 1; k <= g.vertex_count(); ++k) {
        if (!is_k_existentially_complete(g, k)) break;
        level = k;
    }
    return level;
}

}  // namespace

uint64_t graph_to_mask(const Graph& g) {
    if (g.vertex_count() > 11)
        throw std::domain_error("graph_to_mask: more than 64 pair slots");
    uint64_t mask = 0;
    for (auto [i, j] : g.edges()) mask |= 1ull << edge_index(i, j);
    return mask;
}

Graph mask_to_graph(int n, uint64_t mask) {
    Graph g(n);
    while (mask) {
        int e = std::countr_zero(mask);
        int j = 1;
        while (edge_index(0, j + 1) <= e) ++j;
        g.add_edge(e - edge_index(0, j), j);
        mask &= mask - 1;
    }
    return g;
}

std::optional<Graph> GraphStream::next() {
    while (true) {
        auto g = produce_();
        if (!g) return std::nullopt;
        bool pass = true;
        for (const auto& f : filters_)
            if (!f(*g)) {
                pass = false;
                break;
            }
        if (pass) return g;
    }
}

void GraphStream::add_filter(const std::string& name) {
    auto int_suffix = [](const std::string& s, const std::string& prefix) -> std::optional<int> {
        if (s.rfind(prefix, 0) != 0) return std::nullopt;
        return std::stoi(s.substr(prefix.size()));
    };
    if (name == "triangle-free") {
        filters_.emplace_back([](const Graph& g) { return is_triangle_free(g); });
    } else if (name == "maximal-triangle-free") {
        filters_.emplace_back([](const Graph& g) { return is_maximal_triangle_free(g); });
    } else if (name == "twin-free") {
        filters_.emplace_back([](const Graph& g) { return is_twin_free(g); });
    } else if (auto k = int_suffix(name, "k-ectf:")) {
        filters_.emplace_back(
            [k](const Graph& g) { return is_triangle_free(g) && is_k_ectf(g, *k); });
    } else if (auto k2 = int_suffix(name, "level>=:")) {
        filters_.emplace_back(
            [k2](const Graph& g) { return is_triangle_free(g) && ectf_level(g) >= *k2; });
    } else if (auto k3 = int_suffix(name, "level≥:")) {
        filters_.emplace_back(
            [k3](const Graph& g) { return is_triangle_free(g) && ectf_level(g) >= *k3; });
    } else {
        throw std::invalid_argument("unknown stream predicate: " + name);
    }
    names_.push_back(name);
}

std::vector<Graph> GraphStream::drain() {
    std::vector<Graph> out;
    while (auto g = next()) out.push_back(std::move(*g));
    return out;
}

GraphStream GraphStream::from_list(std::vector<Graph> graphs) {
    auto state = std::make_shared<std::pair<std::vector<Graph>, size_t>>(std::move(graphs), 0);
    return GraphStream([state]() -> std::optional<Graph> {
        if (state->second >= state->first.size()) return std::nullopt;
        return state->first[state->second++];
    });
}

GraphStream GraphStream::from_graph6_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph6 file: " + path);
    std::vector<Graph> graphs;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        try {
            graphs.push_back(parse_graph6(line));
        } catch (const std::exception& err) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + err.what());
        }
    }
    return from_list(std::move(graphs));
}

GraphStream enumerate_graphs(int n, bool dedup) {
    if (n < 1) throw std::invalid_argument("enumerate_graphs: n must be >= 1");
    if (dedup && n > 7) throw std::invalid_argument("enumerate_graphs: dedup guarded to n <= 7");
    if (!dedup && n > 9) throw std::invalid_argument("enumerate_graphs: labeled guarded to n <= 9");

    if (dedup) {
        auto state = std::make_shared<std::pair<std::vector<uint64_t>, size_t>>(canonical_masks(n), 0);
        return GraphStream([state, n]() -> std::optional<Graph> {
            if (state->second >= state->first.size()) return std::nullopt;
            return mask_to_graph(n, state->first[state->second++]);
        });
    }
    const uint64_t end = 1ull << (n * (n - 1) / 2);
    auto counter = std::make_shared<uint64_t>(0);
    return GraphStream([counter, n, end]() -> std::optional<Graph> {
        if (*counter >= end) return std::nullopt;
        return mask_to_graph(n, (*counter)++);
    });
}

GraphStream filter_stream(GraphStream s, const std::vector<std::string>& predicates) {
    for (const auto& name : predicates) s.add_filter(name);
    return s;
}

Graph random_maximal_triangle_free(int n, uint64_t seed) {
    if (n < 2) throw std::invalid_argument("random_maximal_triangle_free: n must be >= 2");
    Rng rng(seed);
    auto pairs = all_pairs(n);
    rng.shuffle(pairs);

    Graph g(n);
    std::vector<bool> placed(pairs.size(), false);
    bool progress = true;
    while (progress) {
        progress = false;
        for (size_t i = 0; i < pairs.size(); ++i) {
            if (placed[i]) continue;
            auto [u, v] = pairs[i];
            if (!g.neighbors(u).intersects(g.neighbors(v))) {
                g.add_edge(u, v);
                placed[i] = true;
                progress = true;
            }
        }
    }
    return g;
}

Graph gnp(int n, double p, uint64_t seed) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("gnp: p outside [0, 1]");
    Rng rng(seed);
    Graph g(n);
    for (auto [i, j] : all_pairs(n))
        if (rng.unit() < p) g.add_edge(i, j);
    return g;
}

std::vector<FTableRow> f_table(int n_max) {
    if (n_max < 1 || n_max > 7) throw std::invalid_argument("f_table: n_max guarded to 1..7");
    std::vector<FTableRow> rows;
    for (int n = 1; n <= n_max; ++n) {
        FTableRow row;
        row.n = n;
        GraphStream stream = filter_stream(enumerate_graphs(n, true), {"triangle-free"});
        std::optional<Graph> witness;
        while (auto g = stream.next()) {
            ++row.graphs_examined;
            int level = ectf_level(*g);
            if (!witness || level > row.max_level) {
                witness = *g;
                row.max_level = level;
            }
        }
        row.witness_graph6 = write_graph6(*witness);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string f_table_csv(const std::vector<FTableRow>& rows) {
    std::ostringstream out;
    out << "# version=" << kVersion << "\n";
    out << "n,graphs_examined,max_level,witness_graph6\n";
    for (const auto& r : rows)
        out << r.n << "," << r.graphs_examined << "," << r.max_level << "," << r.witness_graph6
            << "\n";
    return out.str();
}

GnpExperiment gnp_completeness_experiment(int n, int trials, uint64_t seed, double p) {
    if (n < 1 || n > 256) throw std::invalid_argument("gnp experiment: n guarded to 1..256");
    if (trials < 1) throw std::invalid_argument("gnp experiment: need at least one trial");

    GnpExperiment out;
    std::vector<int> levels;
    for (int trial = 0; trial < trials; ++trial) {
        Graph g = gnp(n, p, seed + static_cast<uint64_t>(trial));
        int level = general_completeness_level(g);
        levels.push_back(level);
        out.trials.push_back({n, p, seed, trial, level});
    }
    std::vector<int> sorted = levels;
    std::sort(sorted.begin(), sorted.end());
    out.median = sorted[(sorted.size() - 1) / 2];
    out.max = sorted.back();
    return out;
}

std::string gnp_experiment_csv(const std::vector<GnpTrialRow>& rows, uint64_t seed) {
    std::ostringstream out;
    out << "# rng=" << Rng::algorithm() << " seed=" << seed << " version=" << kVersion << "\n";
    out << "n,p,seed,trial,level\n";
    for (const auto& r : rows)
        out << r.n << "," << r.p << "," << r.seed << "," << r.trial << "," << r.level << "\n";
    return out.str();
}

}  // namespace ectf
