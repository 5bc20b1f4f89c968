#include "ectf/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace ectf {

Graph Graph::permuted(const std::vector<int>& perm) const {
    if (static_cast<int>(perm.size()) != n_)
        throw std::invalid_argument("permuted: wrong permutation length");
    Graph out(n_);
    for (int u = 0; u < n_; ++u)
        for (int v = adj_[static_cast<size_t>(u)].next(u + 1); v >= 0;
             v = adj_[static_cast<size_t>(u)].next(v + 1))
            out.add_edge(perm[static_cast<size_t>(u)], perm[static_cast<size_t>(v)]);
    return out;
}

Graph build_graph(int n, const std::vector<std::pair<int, int>>& edges) {
    Graph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

bool is_triangle_free(const Graph& g) {
    const int n = g.vertex_count();
    for (int u = 0; u < n; ++u) {
        const BitRow& nu = g.neighbors(u);
        for (int v = nu.next(u + 1); v >= 0; v = nu.next(v + 1))
            if (nu.intersects(g.neighbors(v))) return false;
    }
    return true;
}

BitRow common_neighbors(const Graph& g, const BitRow& x) {
    BitRow r = BitRow::full(g.vertex_count());
    for (int v = x.first(); v >= 0; v = x.next(v + 1)) r &= g.neighbors(v);
    return r;
}

int isqrt_floor(int n) {
    if (n < 0) throw std::invalid_argument("isqrt_floor: negative input");
    int r = 0;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

BitRow greedy_large_independent_set(const Graph& g) {
    if (!is_triangle_free(g))
        throw std::invalid_argument("greedy_large_independent_set: input has a triangle");
    const int n = g.vertex_count();
    const int bound = isqrt_floor(n);

    for (int v = 0; v < n; ++v)
        if (g.degree(v) >= bound && bound > 0) return g.neighbors(v);

    // All degrees < floor(sqrt(n)): greedy proper coloring needs at most
    // floor(sqrt(n)) colors, so some class has >= n / sqrt(n) vertices.
    std::vector<int> color(static_cast<size_t>(n), -1);
    int color_count = 0;
    for (int v = 0; v < n; ++v) {
        std::vector<bool> used(static_cast<size_t>(color_count + 1), false);
        const BitRow& nv = g.neighbors(v);
        for (int u = nv.first(); u >= 0 && u < v; u = nv.next(u + 1))
            used[static_cast<size_t>(color[static_cast<size_t>(u)])] = true;
        int c = 0;
        while (used[static_cast<size_t>(c)]) ++c;
        color[static_cast<size_t>(v)] = c;
        color_count = std::max(color_count, c + 1);
    }
    std::vector<int> class_size(static_cast<size_t>(std::max(color_count, 1)), 0);
    for (int v = 0; v < n; ++v) ++class_size[static_cast<size_t>(color[static_cast<size_t>(v)])];
    int best = 0;
    for (int c = 1; c < color_count; ++c)
        if (class_size[static_cast<size_t>(c)] > class_size[static_cast<size_t>(best)]) best = c;
    BitRow out(n);
    for (int v = 0; v < n; ++v)
        if (color[static_cast<size_t>(v)] == best) out.set(v);
    return out;
}

bool is_maximal_triangle_free(const Graph& g) {
    if (!is_triangle_free(g)) return false;
    const int n = g.vertex_count();
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!g.adjacent(u, v) && !g.neighbors(u).intersects(g.neighbors(v))) return false;
    return true;
}

bool are_twins(const Graph& g, int u, int v) {
    BitRow nu = g.neighbors(u);
    BitRow nv = g.neighbors(v);
    if (nu.test(v)) nu.reset(v);
    if (nv.test(u)) nv.reset(u);
    return nu == nv;
}

bool is_twin_free(const Graph& g) {
    const int n = g.vertex_count();
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (are_twins(g, u, v)) return false;
    return true;
}

bool is_c5(const Graph& g) {
    if (g.vertex_count() != 5) return false;
    for (int v = 0; v < 5; ++v)
        if (g.degree(v) != 2) return false;
    return true;
}

bool is_k2(const Graph& g) { return g.vertex_count() == 2 && g.edge_count() == 1; }

BipartiteView::BipartiteView(Graph host, BitRow a, BitRow b)
    : host_(std::move(host)), a_(std::move(a)), b_(std::move(b)) {
    if (a_.universe() != host_.vertex_count() || b_.universe() != host_.vertex_count())
        throw std::invalid_argument("BipartiteView: side universe does not match host");
    if (a_.intersects(b_)) throw std::invalid_argument("BipartiteView: A and B overlap");
}

BipartiteView induced_bipartite(const Graph& g, const BitRow& a, const BitRow& b) {
    return BipartiteView(g, a, b);
}

Graph make_empty(int n) { return Graph(n); }

Graph make_complete(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

Graph make_path(int n) {
    Graph g(n);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

Graph make_cycle(int n) {
    if (n < 3) throw std::invalid_argument("make_cycle: need at least 3 vertices");
    Graph g = make_path(n);
    g.add_edge(n - 1, 0);
    return g;
}

Graph make_petersen() {
    Graph g(10);
    for (int i = 0; i < 5; ++i) {
        g.add_edge(i, (i + 1) % 5);          // outer cycle
        g.add_edge(5 + i, 5 + (i + 2) % 5);  // inner pentagram
        g.add_edge(i, 5 + i);                // spokes
    }
    return g;
}

}  // namespace ectf
