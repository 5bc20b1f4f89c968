#include "ectf/refutation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "ectf/separating.hpp"

namespace ectf {

namespace {

Rational rational_from_double(double x) {
    if (x == 0.0) return Rational(0);
    if (!std::isfinite(x)) throw std::invalid_argument("rational_from_double: non-finite");
    int exp = 0;
    double mant = std::frexp(x, &exp);
    auto num = static_cast<int64_t>(std::ldexp(mant, 53));
    exp -= 53;
    Rational r(num);
    if (exp > 0)
        r *= Rational(BigInt(1) << exp);
    else if (exp < 0)
        r /= Rational(BigInt(1) << -exp);
    return r;
}

std::vector<int> ascending(const BitRow& row) { return row.to_vector(); }

ViolationCertificate checked_certificate(const Graph& g, BitRow x, BitRow y, int level) {
    if (x.intersects(y)) throw std::logic_error("refute: certificate sides overlap");
    if (x.count() + y.count() > level) throw std::logic_error("refute: certificate too large");
    for (int u = x.first(); u >= 0; u = x.next(u + 1))
        if (g.neighbors(u).intersects(x)) throw std::logic_error("refute: certificate X dependent");
    ViolationCertificate cert{ExtensionQuery{std::move(x), std::move(y)}, level};
    if (extension_vertex(g, cert.query))
        throw std::logic_error("refute: certificate failed re-verification");
    return cert;
}

/**
 * Exhaustive (S,T) scan over B in decreasing mu-weight order, looking for
 * a pair no Y-vertex covers. Returns the pair, nullopt on an exhausted
 * budget; throws if the whole space is covered (the lemma chain makes
 * that impossible when no heavy vertex exists and theta^-m > n).
 */
class WeightedPairScan {
public:
    WeightedPairScan(const Graph& g, const BitRow& b, const BitRow& y_set,
                     const CoveringMeasure& mu, int m, uint64_t budget)
        : g_(g), y_set_(y_set), m_(m), budget_(budget) {
        order_ = b.to_vector();
        std::stable_sort(order_.begin(), order_.end(),
                         [&](int u, int v) { return mu.mass_of(u) > mu.mass_of(v); });
        cover_.reserve(order_.size());
        for (int v : order_) cover_.push_back(g_.neighbors(v) & y_set_);
    }

    std::optional<std::pair<BitRow, BitRow>> find_failing(bool& exhausted_budget) {
        exhausted_budget = false;
        const size_t nb = order_.size();
        std::vector<size_t> s_idx;
        for (int total = 0; total <= 2 * m_; ++total) {
            for (int ssize = 0; ssize <= std::min(total, m_); ++ssize) {
                const int tsize = total - ssize;
                if (tsize > m_) continue;
                if (ssize > static_cast<int>(nb) || tsize > static_cast<int>(nb) - ssize) continue;
                s_idx.resize(static_cast<size_t>(ssize));
                for (int i = 0; i < ssize; ++i) s_idx[static_cast<size_t>(i)] = static_cast<size_t>(i);
                do {
                    if (auto r = scan_t(s_idx, tsize, exhausted_budget)) return r;
                    if (exhausted_budget) return std::nullopt;
                } while (next_combination(s_idx, nb));
            }
        }
        throw std::logic_error("refute: no failing pair although the bound forces one");
    }

private:
    static bool next_combination(std::vector<size_t>& idx, size_t n) {
        int k = static_cast<int>(idx.size());
        int i = k - 1;
        while (i >= 0 && idx[static_cast<size_t>(i)] == n - static_cast<size_t>(k - i)) --i;
        if (i < 0) return false;
        ++idx[static_cast<size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
        return true;
    }

    std::optional<std::pair<BitRow, BitRow>> scan_t(const std::vector<size_t>& s_idx, int tsize,
                                                    bool& exhausted_budget) {
        std::vector<size_t> avail;
        for (size_t i = 0; i < order_.size(); ++i)
            if (std::find(s_idx.begin(), s_idx.end(), i) == s_idx.end()) avail.push_back(i);
        if (tsize > static_cast<int>(avail.size())) return std::nullopt;

        BitRow s_cand = y_set_;
        for (size_t i : s_idx) s_cand &= cover_[i];

        std::vector<size_t> pick(static_cast<size_t>(tsize));
        for (int i = 0; i < tsize; ++i) pick[static_cast<size_t>(i)] = static_cast<size_t>(i);
        while (true) {
            if (checks_++ >= budget_) {
                exhausted_budget = true;
                return std::nullopt;
            }
            BitRow cand = s_cand;
            for (size_t i : pick) cand.subtract(cover_[avail[i]]);
            if (cand.none()) {
                BitRow s_set(g_.vertex_count()), t_set(g_.vertex_count());
                for (size_t i : s_idx) s_set.set(order_[i]);
                for (size_t i : pick) t_set.set(order_[avail[i]]);
                return std::make_pair(std::move(s_set), std::move(t_set));
            }
            if (!next_combination(pick, avail.size())) break;
        }
        return std::nullopt;
    }

    const Graph& g_;
    BitRow y_set_;
    int m_;
    uint64_t budget_;
    uint64_t checks_ = 0;
    std::vector<int> order_;
    std::vector<BitRow> cover_;
};

}  // namespace

Rational RefutationParams::effective_theta() const {
    if (theta) return *theta;
    if (eps) return *eps * *eps;
    throw std::invalid_argument("refutation: theta or eps required in parametric mode");
}

double RefutationParams::effective_alpha() const {
    if (alpha) return *alpha;
    const double eps2 =
        eps ? to_double(*eps) * to_double(*eps) : to_double(effective_theta());
    return (3.0 / (2.0 * m)) * std::log(1.0 / eps2);
}

bool ImplicitTupleFamily::contains(const std::vector<int>& tuple) const {
    for (const BitRow& f : forbidden) {
        bool inside = true;
        for (int v : tuple)
            if (!f.test(v)) {
                inside = false;
                break;
            }
        if (inside) return false;
    }
    return true;
}

uint64_t ImplicitTupleFamily::exact_size(bool distinct_entries) const {
    const std::vector<int> elems = j.to_vector();
    const uint64_t nj = elems.size();
    uint64_t space = 1;
    for (int i = 0; i < m; ++i) {
        space *= nj;
        if (space > (1u << 20)) throw std::domain_error("tuple family: |J|^m above guard");
    }
    uint64_t count = 0;
    std::vector<int> tuple(static_cast<size_t>(m));
    std::vector<size_t> pos(static_cast<size_t>(m), 0);
    if (nj == 0) return m == 0 ? (forbidden.empty() ? 1 : contains({})) : 0;
    while (true) {
        bool repeated = false;
        if (distinct_entries)
            for (int i = 0; i < m && !repeated; ++i)
                for (int k = i + 1; k < m; ++k)
                    if (pos[static_cast<size_t>(i)] == pos[static_cast<size_t>(k)]) {
                        repeated = true;
                        break;
                    }
        if (!repeated) {
            for (int i = 0; i < m; ++i) tuple[static_cast<size_t>(i)] = elems[pos[static_cast<size_t>(i)]];
            if (contains(tuple)) ++count;
        }
        int i = m - 1;
        while (i >= 0 && pos[static_cast<size_t>(i)] + 1 == nj) pos[static_cast<size_t>(i--)] = 0;
        if (i < 0) break;
        ++pos[static_cast<size_t>(i)];
    }
    return count;
}

std::optional<std::vector<int>> tuple_family_pick(const ImplicitTupleFamily& fam,
                                                  bool distinct_entries) {
    const std::vector<int> elems = fam.j.to_vector();
    if (elems.empty() && fam.m > 0) return std::nullopt;
    if (distinct_entries && static_cast<int>(elems.size()) < fam.m) return std::nullopt;

    std::vector<int> tuple;
    std::vector<bool> used(elems.size(), false);
    // active: forbidden sets still containing every chosen entry
    std::vector<size_t> active(fam.forbidden.size());
    for (size_t i = 0; i < active.size(); ++i) active[i] = i;

    std::function<bool(const std::vector<size_t>&)> descend =
        [&](const std::vector<size_t>& act) -> bool {
        if (act.empty()) {
            // any completion survives; take the least remaining elements
            for (size_t i = 0; tuple.size() < static_cast<size_t>(fam.m); ++i) {
                if (distinct_entries) {
                    while (used[i]) ++i;
                    used[i] = true;
                    tuple.push_back(elems[i]);
                } else {
                    tuple.push_back(elems[0]);
                }
            }
            return true;
        }
        if (tuple.size() == static_cast<size_t>(fam.m)) return false;
        for (size_t i = 0; i < elems.size(); ++i) {
            if (distinct_entries && used[i]) continue;
            std::vector<size_t> next_act;
            for (size_t f : act)
                if (fam.forbidden[f].test(elems[i])) next_act.push_back(f);
            tuple.push_back(elems[i]);
            if (distinct_entries) used[i] = true;
            if (tuple.size() == static_cast<size_t>(fam.m) && next_act.empty()) return true;
            if (tuple.size() < static_cast<size_t>(fam.m) && descend(next_act)) return true;
            tuple.pop_back();
            if (distinct_entries) used[i] = false;
        }
        return false;
    };

    if (!descend(active)) return std::nullopt;
    return tuple;
}

double tuple_family_lower_bound(const ImplicitTupleFamily& fam, double alpha, int t) {
    const double nj = static_cast<double>(fam.j.count());
    return (1.0 - t * std::pow(alpha, fam.m)) * std::pow(nj, fam.m);
}

StrictGate strict_gate(uint64_t n, int k) {
    if (n < 16) throw std::domain_error("strict_gate: n must be >= 16");
    if (k < 2 || k % 2 != 0) throw std::invalid_argument("strict_gate: k must be even and >= 2");
    StrictGate gate;
    gate.k = k;
    const double loglogn = std::log(std::log(static_cast<double>(n)));
    gate.eps = 4.0 / loglogn;
    const double log_inv_eps2 = std::log(1.0 / (gate.eps * gate.eps));
    gate.alpha = (3.0 / k) * log_inv_eps2;
    const int m = k / 2;

    const bool ineq2 =
        gate.alpha > 0.0 && std::pow(gate.alpha, -m) > static_cast<double>(n);
    if (!ineq2) {
        gate.failing = "inequality (2)";
        return gate;
    }
    const double lhs3 = (2.0 / k) * log_inv_eps2 +
                        static_cast<double>(k) / (std::sqrt(static_cast<double>(n)) - 2.0);
    if (!(lhs3 <= gate.alpha)) {
        gate.failing = "inequality (3)";
        return gate;
    }
    gate.admitted = true;
    return gate;
}

StrictGate strict_gate(uint64_t n) {
    if (n < 16) throw std::domain_error("strict_gate: n must be >= 16");
    const double threshold =
        4.0 * std::log(static_cast<double>(n)) / std::log(std::log(static_cast<double>(n)));
    int k = static_cast<int>(std::ceil(threshold));
    if (k % 2) ++k;
    if (k < 2) k = 2;
    return strict_gate(n, k);
}

RefutationTrace refute(const Graph& g, int level, const RefutationParams& params) {
    if (!is_triangle_free(g)) throw std::invalid_argument("refute: graph is not triangle-free");

    RefutationTrace trace;
    trace.level = level;
    const int n = g.vertex_count();

    int m = params.m;
    Rational theta;

    if (params.mode == RefutationMode::StrictPaper) {
        if (level < 4 || level % 4 != 0)
            throw std::invalid_argument("refute: strict mode needs level divisible by 4");
        const int k = level / 2;
        m = level / 4;
        trace.m = m;
        if (n < 16) {
            trace.outcome = {RefutationOutcomeKind::Inconclusive, std::nullopt,
                             "strict-gate: n below domain (need n >= 16)", {}};
            return trace;
        }
        const double threshold =
            4.0 * std::log(static_cast<double>(n)) / std::log(std::log(static_cast<double>(n)));
        if (static_cast<double>(k) < threshold) {
            trace.outcome = {RefutationOutcomeKind::Inconclusive, std::nullopt,
                             "strict-gate: k below 4 log n / log log n", {}};
            return trace;
        }
        StrictGate gate = strict_gate(static_cast<uint64_t>(n), k);
        if (!gate.admitted) {
            trace.outcome = {RefutationOutcomeKind::Inconclusive, std::nullopt,
                             "strict-gate: " + gate.failing, {}};
            return trace;
        }
        theta = rational_from_double(gate.eps * gate.eps);
    } else {
        if (m < 1) throw std::invalid_argument("refute: m must be >= 1");
        trace.m = m;
        theta = params.effective_theta();
    }
    if (theta <= 0 || theta > 1) throw std::invalid_argument("refute: theta must be in (0, 1]");
    if (level < 3 * m) throw std::invalid_argument("refute: level must be >= 3m");

    const BitRow ind_set = greedy_large_independent_set(g);
    trace.independent_set = ascending(ind_set);

    if (ind_set.count() < m + 2) {
        auto fallback = find_violation(g, level, QueryMode::TriangleFree);
        if (fallback) {
            trace.fallback_used = true;
            trace.outcome = {RefutationOutcomeKind::Certificate, std::move(fallback),
                             "graph-too-small", {}};
        } else {
            trace.outcome = {RefutationOutcomeKind::Inconclusive, std::nullopt,
                             "graph-too-small", {}};
        }
        return trace;
    }

    int x0 = ind_set.first();
    if (params.pivot) {
        if (!ind_set.test(*params.pivot))
            throw std::invalid_argument("refute: pivot outside the independent set");
        x0 = *params.pivot;
    }
    trace.pivot = x0;
    BitRow j_set = ind_set;
    j_set.reset(x0);

    ImplicitTupleFamily family{j_set, m, {}};
    BitRow discovered(n);

    // theta^-m > n  <=>  1 > n * theta^m
    Rational theta_m = 1;
    for (int i = 0; i < m; ++i) theta_m *= theta;
    const bool small_theta_regime = Rational(n) * theta_m < 1;

    for (int t = 1; t <= n + 1; ++t) {
        RefutationStep step;
        step.t = t;

        auto y_tuple = tuple_family_pick(family, params.distinct_entries);
        if (!y_tuple) {
            step.branch = "alpha-regime";
            trace.steps.push_back(std::move(step));
            trace.outcome = {RefutationOutcomeKind::Inconclusive, std::nullopt, "alpha-regime", {}};
            return trace;
        }
        step.y = *y_tuple;
        BitRow y_support(n);
        for (int v : *y_tuple) y_support.set(v);

        BitRow b_set = g.neighbors(x0);
        for (int v = y_support.first(); v >= 0; v = y_support.next(v + 1))
            b_set.subtract(g.neighbors(v));
        step.b_size = b_set.count();

        if (b_set.none()) {
            step.branch = "empty-b";
            trace.steps.push_back(std::move(step));
            BitRow x(n);
            x.set(x0);
            trace.outcome = {RefutationOutcomeKind::Certificate,
                             checked_certificate(g, std::move(x), y_support, level),
                             "",
                             {}};
            return trace;
        }

        BitRow a_set = ind_set;
        a_set.reset(x0);
        a_set.subtract(y_support);
        BipartiteView view_ab = induced_bipartite(g, a_set, b_set);

        if (auto unsep = find_unseparated(view_ab, m, m - 1)) {
            step.branch = "separating-ab";
            trace.steps.push_back(std::move(step));
            BitRow x = unsep->s_set;
            x.set(x0);
            BitRow y = y_support;
            y |= unsep->t_set;
            trace.outcome = {RefutationOutcomeKind::Certificate,
                             checked_certificate(g, std::move(x), std::move(y), level),
                             "",
                             {}};
            return trace;
        }

        step.b_floor = m <= 63 ? static_cast<int>(1ll << (m - 1)) : -1;

        BitRow y_common = common_neighbors(g, y_support);
        step.y_size = y_common.count();
        if (y_common.none()) {
            step.branch = "empty-y";
            trace.steps.push_back(std::move(step));
            trace.outcome = {RefutationOutcomeKind::Certificate,
                             checked_certificate(g, y_support, BitRow(n), level),
                             "",
                             {}};
            return trace;
        }

        CoveringMeasure mu{BipartiteView(g, BitRow(n), BitRow(n)), 0,
                           CoveringMeasure::Kind::Exact, 0, {}};
        try {
            mu = covering_measure_exact(view_ab, m);
        } catch (const std::invalid_argument& err) {
            step.branch = "measure-budget";
            trace.steps.push_back(std::move(step));
            trace.outcome = {RefutationOutcomeKind::Inconclusive, std::nullopt,
                             std::string("measure-budget: ") + err.what(), {}};
            return trace;
        }

        std::optional<int> heavy;
        for (int w = y_common.first(); w >= 0; w = y_common.next(w + 1)) {
            if (mu.mass_of(g.neighbors(w) & b_set) >= theta) {
                heavy = w;
                break;
            }
        }

        if (!heavy) {
            if (small_theta_regime) {
                step.branch = "separating-by";
                trace.steps.push_back(std::move(step));
                WeightedPairScan scan(g, b_set, y_common, mu, m, params.pair_search_budget);
                bool out_of_budget = false;
                auto failing = scan.find_failing(out_of_budget);
                if (out_of_budget) {
                    trace.outcome = {RefutationOutcomeKind::Inconclusive, std::nullopt,
                                     "search-budget", {}};
                    return trace;
                }
                BitRow x = failing->first;
                x |= y_support;
                trace.outcome = {RefutationOutcomeKind::Certificate,
                                 checked_certificate(g, std::move(x), failing->second, level),
                                 "",
                                 {}};
                return trace;
            }
            step.branch = "parameter-regime";
            trace.steps.push_back(std::move(step));
            trace.outcome = {RefutationOutcomeKind::Inconclusive, std::nullopt,
                             "parameter-regime", {}};
            return trace;
        }

        const int w = *heavy;
        if (discovered.test(w))
            throw std::logic_error("refute: discovered vertex repeated");
        // a neighbor of w inside the expanded A-neighborhoods would close
        // a triangle through some x in N_B(w)
        BitRow expanded(n);
        BitRow nbw = g.neighbors(w) & b_set;
        for (int x = nbw.first(); x >= 0; x = nbw.next(x + 1))
            expanded |= g.neighbors(x) & a_set;
        if (g.neighbors(w).intersects(expanded))
            throw std::logic_error("refute: triangle-free exploitation violated");

        discovered.set(w);
        trace.discovered.push_back(w);
        step.branch = "heavy";
        step.w = w;
        step.degree_in_j = (g.neighbors(w) & j_set).count();
        trace.steps.push_back(std::move(step));
        family.forbidden.push_back(g.neighbors(w) & j_set);
    }

    trace.outcome = {RefutationOutcomeKind::VertexOverflow, std::nullopt, "", trace.discovered};
    return trace;
}

std::string trace_to_log(const RefutationTrace& trace) {
    std::ostringstream out;
    for (const auto& step : trace.steps) {
        out << "t=" << step.t << " y=(";
        for (size_t i = 0; i < step.y.size(); ++i) {
            if (i) out << ",";
            out << step.y[i];
        }
        out << ") |B|=" << step.b_size << " |Y|=" << step.y_size;
        if (step.b_floor >= 0)
            out << " b-floor=" << step.b_floor
                << (step.b_size >= step.b_floor ? "(ok)" : "(low)");
        if (step.w)
            out << " w=" << *step.w << " dJ=" << step.degree_in_j;
        else
            out << " branch=" << step.branch;
        out << "\n";
    }
    switch (trace.outcome.kind) {
        case RefutationOutcomeKind::Certificate:
            out << "outcome=certificate " << certificate_to_json(*trace.outcome.certificate);
            if (trace.fallback_used) out << " fallback=" << trace.outcome.reason;
            break;
        case RefutationOutcomeKind::Inconclusive:
            out << "outcome=inconclusive reason=" << trace.outcome.reason;
            break;
        case RefutationOutcomeKind::VertexOverflow:
            out << "outcome=vertex-overflow count=" << trace.outcome.overflow_vertices.size();
            break;
    }
    out << "\n";
    return out.str();
}

}  // namespace ectf
