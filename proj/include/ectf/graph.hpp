#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ectf/bitrow.hpp"

namespace ectf {

/**
 * Simple undirected graph on dense vertices 0..n-1, adjacency stored as one
 * bit-row per vertex. Symmetric and loop-free by construction; immutable in
 * practice (no operation mutates a graph after it has been built), so values
 * are safe to share across workers.
 */
class Graph {
public:
    static constexpr int kMaxVertices = 100000;

    Graph() = default;

    explicit Graph(int n) {
        if (n < 0 || n > kMaxVertices)
            throw std::invalid_argument("Graph: vertex count out of range");
        n_ = n;
        adj_.assign(static_cast<size_t>(n), BitRow(n));
    }

    int vertex_count() const { return n_; }

    const BitRow& neighbors(int v) const {
        range_check(v);
        return adj_[static_cast<size_t>(v)];
    }

    bool adjacent(int u, int v) const {
        range_check(u);
        return adj_[static_cast<size_t>(u)].test(v);
    }

    int degree(int v) const { return neighbors(v).count(); }

    void add_edge(int u, int v) {
        range_check(u);
        range_check(v);
        if (u == v) throw std::invalid_argument("Graph: self-loop rejected");
        adj_[static_cast<size_t>(u)].set(v);
        adj_[static_cast<size_t>(v)].set(u);
    }

    uint64_t edge_count() const {
        uint64_t twice = 0;
        for (const auto& row : adj_) twice += static_cast<uint64_t>(row.count());
        return twice / 2;
    }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        for (int u = 0; u < n_; ++u)
            for (int v = adj_[static_cast<size_t>(u)].next(u + 1); v >= 0;
                 v = adj_[static_cast<size_t>(u)].next(v + 1))
                out.emplace_back(u, v);
        return out;
    }

    BitRow all_vertices() const { return BitRow::full(n_); }

    /// Relabels vertex v to perm[v].
    Graph permuted(const std::vector<int>& perm) const;

    bool operator==(const Graph&) const = default;

private:
    void range_check(int v) const {
        if (v < 0 || v >= n_) throw std::out_of_range("Graph: vertex out of range");
    }

    int n_ = 0;
    std::vector<BitRow> adj_;
};

Graph build_graph(int n, const std::vector<std::pair<int, int>>& edges);

bool is_triangle_free(const Graph& g);

/// { z : X is contained in N(z) }; the full vertex set when X is empty.
BitRow common_neighbors(const Graph& g, const BitRow& x);

/**
 * Independent set of size >= floor(sqrt(n)) in a triangle-free graph: the
 * neighborhood of the lowest-index vertex of degree >= floor(sqrt(n)) when
 * one exists, otherwise the largest class of a greedy coloring (ascending
 * vertex order, least available color, lowest class index on ties).
 */
BitRow greedy_large_independent_set(const Graph& g);

/// True iff g is triangle-free and every non-adjacent pair has a common neighbor.
bool is_maximal_triangle_free(const Graph& g);

/// N(u) \ {v} == N(v) \ {u}.
bool are_twins(const Graph& g, int u, int v);

bool is_twin_free(const Graph& g);

/// Isomorphic to the 5-cycle (the only 2-regular simple graph on 5 vertices).
bool is_c5(const Graph& g);

/// A single edge on exactly two vertices.
bool is_k2(const Graph& g);

int isqrt_floor(int n);

/**
 * An ordered pair (A, B) of disjoint vertex sets over a host graph,
 * restricted to the cross edges. Immutable value type.
 */
class BipartiteView {
public:
    BipartiteView(Graph host, BitRow a, BitRow b);

    const Graph& host() const { return host_; }
    const BitRow& a_side() const { return a_; }
    const BitRow& b_side() const { return b_; }

    BitRow neighbors_in_a(int v) const { return host_.neighbors(v) & a_; }
    BitRow neighbors_in_b(int v) const { return host_.neighbors(v) & b_; }

    uint64_t cross_edge_count() const {
        uint64_t total = 0;
        for (int v = b_.first(); v >= 0; v = b_.next(v + 1))
            total += static_cast<uint64_t>(neighbors_in_a(v).count());
        return total;
    }

private:
    Graph host_;
    BitRow a_, b_;
};

BipartiteView induced_bipartite(const Graph& g, const BitRow& a, const BitRow& b);

// Fixture families.
Graph make_empty(int n);
Graph make_complete(int n);
Graph make_path(int n);
Graph make_cycle(int n);
Graph make_petersen();

}  // namespace ectf
