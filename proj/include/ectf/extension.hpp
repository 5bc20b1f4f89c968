#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ectf/graph.hpp"

namespace ectf {

/**
 * A witness request: a vertex adjacent to all of X and none of Y. For the
 * triangle-free extension property X must additionally be independent in
 * the host graph.
 */
struct ExtensionQuery {
    BitRow x;
    BitRow y;
};

/**
 * A query with no valid extension vertex, refuting the given level. The
 * witness would have to be a vertex outside X and Y; |X| + |Y| <= level.
 */
struct ViolationCertificate {
    ExtensionQuery query;
    int level = 0;
};

enum class QueryMode {
    TriangleFree,  // X restricted to independent sets
    General,       // all disjoint (X, Y)
};

/**
 * Lowest-index vertex z outside X and Y with X contained in N(z) and
 * N(z) disjoint from Y, if any.
 */
std::optional<int> extension_vertex(const Graph& g, const ExtensionQuery& q);

/**
 * The triangle-free extension property at level k: every query with
 * |X| + |Y| <= k, X independent and disjoint from Y, has an extension
 * vertex. All sizes up to k are checked, which makes the property monotone
 * in k. Requires a triangle-free input and k >= 1.
 */
bool is_k_ectf(const Graph& g, int k);

/// Extension property without the independence proviso, any host graph.
bool is_k_existentially_complete(const Graph& g, int k);

/**
 * Constructive negation: the lexicographically least failing query by
 * (|X| + |Y|, X, Y), verified unsatisfiable before return; nullopt iff the
 * corresponding predicate holds.
 */
std::optional<ViolationCertificate> find_violation(const Graph& g, int level, QueryMode mode);

/// Largest k >= 1 with is_k_ectf(g, k), or 0. Always < n.
int ectf_level(const Graph& g);

/// Maximal triangle-free, twin-free, and neither a C5 nor a single edge.
bool is_2ectf_by_characterization(const Graph& g);

/**
 * A partial injection from pattern vertices into a host that preserves
 * adjacency and non-adjacency on its domain (image[v] empty = unmapped).
 */
struct PartialEmbedding {
    Graph pattern;
    std::vector<std::optional<int>> image;
};

/**
 * Completes a partial embedding one pattern vertex at a time (ascending
 * index), each step asking for a vertex adjacent to the images of mapped
 * neighbors and avoiding the images of mapped non-neighbors. Returns the
 * full image vector or nullopt if some step has no witness. Throws if the
 * input mapping is not a valid partial embedding.
 */
std::optional<std::vector<int>> extend_embedding(const Graph& g, const PartialEmbedding& pe);

/**
 * floor(log2 n): an independent k-set forces 2^k distinct adjacency traces,
 * so any level-k graph needs n >= 2^k. Requires n >= 2.
 */
int trivial_upper_bound(uint64_t n);

/**
 * 8 log(n) / log(log(n)) with logarithms to the given base (natural by
 * default). Requires n >= 16.
 */
double theorem_upper_bound(uint64_t n, double log_base = 0.0);

/// {"level": k, "X": [...], "Y": [...]} with sorted vertex lists.
std::string certificate_to_json(const ViolationCertificate& cert);

}  // namespace ectf
