#include "ectf/extension.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace ectf {

namespace {

bool query_satisfiable(const Graph& g, const BitRow& x, const BitRow& y, const BitRow& cn) {
    // candidates: common neighbors of X, outside Y (and outside X, which
    // common_neighbors already guarantees for nonempty X)
    for (int z = cn.first(); z >= 0; z = cn.next(z + 1)) {
        if (y.test(z) || x.test(z)) continue;
        if (!g.neighbors(z).intersects(y)) return true;
    }
    return false;
}

/**
 * Visits queries in (|X|+|Y|, X, Y) order, X and Y as ascending vertex
 * lists. Returns the first failing query, if any. X enumeration is a
 * preorder walk of the subset tree (append-larger-element children), which
 * is exactly list-lexicographic order; Y runs over same-size combinations
 * of the complement.
 */
class QueryScan {
public:
    QueryScan(const Graph& g, QueryMode mode) : g_(g), n_(g.vertex_count()), mode_(mode) {}

    std::optional<ExtensionQuery> first_failure(int k) {
        for (int s = 0; s <= k; ++s) {
            size_ = s;
            BitRow x(n_);
            BitRow cn = BitRow::full(n_);
            BitRow blocked(n_);  // vertices adjacent to X (independence pruning)
            if (auto q = walk_x(x, cn, blocked, 0, -1)) return q;
        }
        return std::nullopt;
    }

private:
    std::optional<ExtensionQuery> walk_x(BitRow& x, const BitRow& cn, const BitRow& blocked,
                                         int xsize, int last) {
        if (auto q = scan_y(x, cn, size_ - xsize)) return q;
        if (xsize == size_) return std::nullopt;
        for (int v = last + 1; v < n_; ++v) {
            if (mode_ == QueryMode::TriangleFree && blocked.test(v)) continue;
            x.set(v);
            BitRow cn2 = cn & g_.neighbors(v);
            BitRow blocked2 = blocked | g_.neighbors(v);
            if (auto q = walk_x(x, cn2, blocked2, xsize + 1, v)) return q;
            x.reset(v);
        }
        return std::nullopt;
    }

    std::optional<ExtensionQuery> scan_y(const BitRow& x, const BitRow& cn, int ysize) {
        avail_.clear();
        for (int v = 0; v < n_; ++v)
            if (!x.test(v)) avail_.push_back(v);
        if (ysize > static_cast<int>(avail_.size())) return std::nullopt;

        std::vector<int> idx(static_cast<size_t>(ysize));
        for (int i = 0; i < ysize; ++i) idx[static_cast<size_t>(i)] = i;
        while (true) {
            BitRow y(n_);
            for (int i : idx) y.set(avail_[static_cast<size_t>(i)]);
            if (!query_satisfiable(g_, x, y, cn)) return ExtensionQuery{x, y};
            // next combination
            int i = ysize - 1;
            while (i >= 0 &&
                   idx[static_cast<size_t>(i)] == static_cast<int>(avail_.size()) - ysize + i)
                --i;
            if (i < 0) break;
            ++idx[static_cast<size_t>(i)];
            for (int j = i + 1; j < ysize; ++j)
                idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
        }
        return std::nullopt;
    }

    const Graph& g_;
    int n_;
    QueryMode mode_;
    int size_ = 0;
    std::vector<int> avail_;
};

}  // namespace

std::optional<int> extension_vertex(const Graph& g, const ExtensionQuery& q) {
    if (q.x.intersects(q.y)) throw std::invalid_argument("extension_vertex: X and Y overlap");
    BitRow cn = common_neighbors(g, q.x);
    for (int z = cn.first(); z >= 0; z = cn.next(z + 1)) {
        if (q.x.test(z) || q.y.test(z)) continue;
        if (!g.neighbors(z).intersects(q.y)) return z;
    }
    return std::nullopt;
}

std::optional<ViolationCertificate> find_violation(const Graph& g, int level, QueryMode mode) {
    if (level < 1) throw std::invalid_argument("find_violation: level must be >= 1");
    if (mode == QueryMode::TriangleFree && !is_triangle_free(g))
        throw std::invalid_argument("find_violation: graph is not triangle-free");
    QueryScan scan(g, mode);
    auto q = scan.first_failure(level);
    if (!q) return std::nullopt;
    ViolationCertificate cert{*q, level};
    if (extension_vertex(g, cert.query))
        throw std::logic_error("find_violation: certificate failed re-verification");
    return cert;
}

bool is_k_ectf(const Graph& g, int k) {
    return !find_violation(g, k, QueryMode::TriangleFree).has_value();
}

bool is_k_existentially_complete(const Graph& g, int k) {
    if (k < 1) throw std::invalid_argument("is_k_existentially_complete: k must be >= 1");
    return !find_violation(g, k, QueryMode::General).has_value();
}

int ectf_level(const Graph& g) {
    if (!is_triangle_free(g)) throw std::invalid_argument("ectf_level: graph is not triangle-free");
    int level = 0;
    for (int k = 1; k <= g.vertex_count(); ++k) {
        if (!is_k_ectf(g, k)) break;
        level = k;
    }
    return level;
}

bool is_2ectf_by_characterization(const Graph& g) {
    // a single vertex is vacuously maximal and twin-free but leaves no
    // room for any witness, so it is excluded along with C5 and K2
    return g.vertex_count() >= 2 && is_maximal_triangle_free(g) && is_twin_free(g) &&
           !is_c5(g) && !is_k2(g);
}

std::optional<std::vector<int>> extend_embedding(const Graph& g, const PartialEmbedding& pe) {
    const Graph& h = pe.pattern;
    const int hn = h.vertex_count();
    if (static_cast<int>(pe.image.size()) != hn)
        throw std::invalid_argument("extend_embedding: image size does not match pattern");

    const int gn = g.vertex_count();
    BitRow used(gn);
    for (int u = 0; u < hn; ++u) {
        if (!pe.image[static_cast<size_t>(u)]) continue;
        int gu = *pe.image[static_cast<size_t>(u)];
        if (gu < 0 || gu >= gn) throw std::invalid_argument("extend_embedding: image out of range");
        if (used.test(gu)) throw std::invalid_argument("extend_embedding: mapping not injective");
        used.set(gu);
        for (int v = 0; v < u; ++v) {
            if (!pe.image[static_cast<size_t>(v)]) continue;
            if (h.adjacent(u, v) != g.adjacent(gu, *pe.image[static_cast<size_t>(v)]))
                throw std::invalid_argument("extend_embedding: adjacency mismatch on domain");
        }
    }

    std::vector<std::optional<int>> image = pe.image;
    for (int u = 0; u < hn; ++u) {
        if (image[static_cast<size_t>(u)]) continue;
        BitRow x(gn), y(gn);
        for (int v = 0; v < hn; ++v) {
            if (v == u || !image[static_cast<size_t>(v)]) continue;
            if (h.adjacent(u, v))
                x.set(*image[static_cast<size_t>(v)]);
            else
                y.set(*image[static_cast<size_t>(v)]);
        }
        auto z = extension_vertex(g, ExtensionQuery{std::move(x), std::move(y)});
        if (!z) return std::nullopt;
        image[static_cast<size_t>(u)] = *z;
    }

    std::vector<int> out(static_cast<size_t>(hn));
    for (int u = 0; u < hn; ++u) out[static_cast<size_t>(u)] = *image[static_cast<size_t>(u)];
    return out;
}

int trivial_upper_bound(uint64_t n) {
    if (n < 2) throw std::domain_error("trivial_upper_bound: n must be >= 2");
    return static_cast<int>(std::bit_width(n)) - 1;
}

double theorem_upper_bound(uint64_t n, double log_base) {
    if (n < 16) throw std::domain_error("theorem_upper_bound: n must be >= 16");
    auto lg = [log_base](double x) {
        return log_base > 0.0 ? std::log(x) / std::log(log_base) : std::log(x);
    };
    double ln = lg(static_cast<double>(n));
    return 8.0 * ln / lg(ln);
}

std::string certificate_to_json(const ViolationCertificate& cert) {
    nlohmann::ordered_json j;
    j["level"] = cert.level;
    j["X"] = cert.query.x.to_vector();
    j["Y"] = cert.query.y.to_vector();
    return j.dump();
}

}  // namespace ectf
