#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ectf/graph.hpp"

namespace ectf {

/**
 * Pull-based graph source with lazily applied named filters. Deterministic
 * order for a fixed source and seed; filters preserve order.
 */
class GraphStream {
public:
    using Producer = std::function<std::optional<Graph>()>;

    explicit GraphStream(Producer produce) : produce_(std::move(produce)) {}

    /// Next graph passing every filter, or nullopt when exhausted.
    std::optional<Graph> next();

    /// Appends a named predicate; throws on an unknown name.
    void add_filter(const std::string& name);

    const std::vector<std::string>& filter_names() const { return names_; }

    std::vector<Graph> drain();

    static GraphStream from_list(std::vector<Graph> graphs);

    /// newline-delimited graph6; a line failing to parse aborts with its number
    static GraphStream from_graph6_file(const std::string& path);

private:
    Producer produce_;
    std::vector<std::function<bool(const Graph&)>> filters_;
    std::vector<std::string> names_;
};

/**
 * All labeled graphs on n vertices in ascending edge-mask order (bit e of
 * the mask is pair e in graph6 column order). With dedup, only masks that
 * are minimal in their permutation orbit survive: one representative per
 * isomorphism class. Guards: n <= 7 deduped, n <= 9 labeled.
 */
GraphStream enumerate_graphs(int n, bool dedup);

/// Names in {triangle-free, maximal-triangle-free, twin-free, k-ectf:<k>, level>=:<k>}.
GraphStream filter_stream(GraphStream s, const std::vector<std::string>& predicates);

/**
 * Seeded-random greedy completion: visits the shuffled non-edges, adding
 * each unless it closes a triangle, until nothing is addable. The result
 * is maximal triangle-free by construction.
 */
Graph random_maximal_triangle_free(int n, uint64_t seed);

/// Binomial random graph: each pair an edge independently with probability p.
Graph gnp(int n, double p, uint64_t seed);

struct FTableRow {
    int n = 0;
    uint64_t graphs_examined = 0;  // iso-classes of triangle-free graphs
    int max_level = 0;
    std::string witness_graph6;
};

/// Maximum extension level over all deduped triangle-free graphs per n <= 7.
std::vector<FTableRow> f_table(int n_max);

std::string f_table_csv(const std::vector<FTableRow>& rows);

struct GnpTrialRow {
    int n = 0;
    double p = 0.5;
    uint64_t seed = 0;
    int trial = 0;
    int level = 0;
};

struct GnpExperiment {
    std::vector<GnpTrialRow> trials;
    int median = 0;  // lower median of the trial levels
    int max = 0;
};

/**
 * Per-trial maximum k with the (general) k-extension property on G(n,p)
 * samples; trial substreams are seeded seed + trial. Guard n <= 256.
 */
GnpExperiment gnp_completeness_experiment(int n, int trials, uint64_t seed, double p = 0.5);

std::string gnp_experiment_csv(const std::vector<GnpTrialRow>& rows, uint64_t seed);

// Edge-mask plumbing (colex pair order, shared with the graph6 layout).
uint64_t graph_to_mask(const Graph& g);
Graph mask_to_graph(int n, uint64_t mask);

}  // namespace ectf
