#include "ectf/separating.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ectf/rng.hpp"

namespace ectf {

namespace {

constexpr int kMaxTupleLength = 4;
constexpr uint64_t kWorkBudget = 1ull << 22;

std::string tuple_to_string(const std::vector<int>& t) {
    std::string s = "(";
    for (size_t i = 0; i < t.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(t[i]);
    }
    return s + ")";
}

/// cover[a] = B-vertices adjacent to a, for every a in A.
std::vector<BitRow> cover_rows(const BipartiteView& bip) {
    const int n = bip.host().vertex_count();
    std::vector<BitRow> cover(static_cast<size_t>(n));
    const BitRow& a = bip.a_side();
    for (int v = a.first(); v >= 0; v = a.next(v + 1))
        cover[static_cast<size_t>(v)] = bip.host().neighbors(v) & bip.b_side();
    return cover;
}

/// Ordered s-tuples of an m-set with support exactly the whole set
/// (surjections [s] -> [m], by inclusion-exclusion).
uint64_t surjection_count(int s, int m) {
    int64_t total = 0;
    int64_t sign = 1;
    int64_t binom = 1;
    for (int i = 0; i <= m; ++i) {
        int64_t pw = 1;
        for (int j = 0; j < s; ++j) pw *= (m - i);
        total += sign * binom * pw;
        sign = -sign;
        binom = binom * (m - i) / (i + 1);
    }
    return static_cast<uint64_t>(total);
}

uint64_t ipow(uint64_t base, int exp) {
    uint64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

/**
 * Walks the disjoint pairs (S, T) over A with |S| <= s, |T| <= t in
 * (|S|+|T|, S, T) order, reporting the first pair no B-vertex covers.
 */
class PairScan {
public:
    PairScan(const BipartiteView& bip, int s, int t)
        : bip_(bip), cover_(cover_rows(bip)), s_max_(s), t_max_(t) {
        if (s < 0 || t < 0) throw std::invalid_argument("separating: negative s or t");
    }

    std::optional<SeparatingWitness> first_failure() {
        const int n = bip_.host().vertex_count();
        for (int total = 0; total <= s_max_ + t_max_; ++total) {
            total_ = total;
            BitRow s_set(n);
            if (auto w = walk_s(s_set, bip_.b_side(), 0, -1)) return w;
        }
        return std::nullopt;
    }

private:
    std::optional<SeparatingWitness> walk_s(BitRow& s_set, const BitRow& cap, int size, int last) {
        if (total_ - size <= t_max_) {
            if (auto w = scan_t(s_set, cap, total_ - size)) return w;
        }
        if (size == std::min(total_, s_max_)) return std::nullopt;
        const BitRow& a = bip_.a_side();
        for (int v = a.next(last + 1); v >= 0; v = a.next(v + 1)) {
            s_set.set(v);
            BitRow cap2 = cap & cover_[static_cast<size_t>(v)];
            if (auto w = walk_s(s_set, cap2, size + 1, v)) return w;
            s_set.reset(v);
        }
        return std::nullopt;
    }

    std::optional<SeparatingWitness> scan_t(const BitRow& s_set, const BitRow& cap, int tsize) {
        avail_.clear();
        const BitRow& a = bip_.a_side();
        for (int v = a.first(); v >= 0; v = a.next(v + 1))
            if (!s_set.test(v)) avail_.push_back(v);
        if (tsize > static_cast<int>(avail_.size())) return std::nullopt;

        std::vector<int> idx(static_cast<size_t>(tsize));
        for (int i = 0; i < tsize; ++i) idx[static_cast<size_t>(i)] = i;
        while (true) {
            BitRow cand = cap;
            BitRow t_set(s_set.universe());
            for (int i : idx) {
                int v = avail_[static_cast<size_t>(i)];
                t_set.set(v);
                cand.subtract(cover_[static_cast<size_t>(v)]);
            }
            if (cand.none()) return SeparatingWitness{s_set, t_set};
            int i = tsize - 1;
            while (i >= 0 &&
                   idx[static_cast<size_t>(i)] == static_cast<int>(avail_.size()) - tsize + i)
                --i;
            if (i < 0) break;
            ++idx[static_cast<size_t>(i)];
            for (int j = i + 1; j < tsize; ++j)
                idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
        }
        return std::nullopt;
    }

    const BipartiteView& bip_;
    std::vector<BitRow> cover_;
    int s_max_, t_max_;
    int total_ = 0;
    std::vector<int> avail_;
};

/**
 * Runs fn(support, surjections, coverset) over every nonempty subset of A
 * with size <= s; fn returns false to abort. Returns false iff aborted.
 */
template <typename Fn>
bool for_each_support(const BipartiteView& bip, const std::vector<BitRow>& cover, int s, Fn&& fn) {
    const std::vector<int> a = bip.a_side().to_vector();
    std::vector<int> support;
    std::vector<uint64_t> surj(static_cast<size_t>(s + 1));
    for (int m = 1; m <= s; ++m) surj[static_cast<size_t>(m)] = surjection_count(s, m);

    // preorder subset walk; coverset maintained incrementally
    struct Frame {
        size_t next;
        BitRow coverset;
    };
    std::vector<Frame> stack;
    stack.push_back({0, bip.b_side()});
    while (!stack.empty()) {
        Frame& top = stack.back();
        if (top.next >= a.size() || static_cast<int>(support.size()) == s) {
            stack.pop_back();
            if (!support.empty()) support.pop_back();
            continue;
        }
        size_t i = top.next++;
        support.push_back(a[i]);
        BitRow cs = top.coverset & cover[static_cast<size_t>(a[i])];
        if (!fn(support, surj[support.size()], cs)) return false;
        stack.push_back({i + 1, std::move(cs)});
    }
    return true;
}

void check_measure_work(const BipartiteView& bip, int s) {
    if (s < 0) throw std::invalid_argument("covering measure: negative tuple length");
    if (s > kMaxTupleLength)
        throw std::invalid_argument("covering measure: tuple length above guard");
    const uint64_t na = static_cast<uint64_t>(bip.a_side().count());
    if (na == 0) throw std::invalid_argument("covering measure: empty A side");
    uint64_t supports = 1, binom = 1;
    for (int j = 1; j <= s && static_cast<uint64_t>(j) <= na; ++j) {
        binom = binom * (na - static_cast<uint64_t>(j) + 1) / static_cast<uint64_t>(j);
        supports += binom;
    }
    uint64_t nb = static_cast<uint64_t>(std::max(bip.b_side().count(), 1));
    if (supports > kWorkBudget / nb)
        throw std::invalid_argument("covering measure: instance above work budget");
}

}  // namespace

bool is_separating(const BipartiteView& bip, int s, int t) {
    return !find_unseparated(bip, s, t).has_value();
}

std::optional<SeparatingWitness> find_unseparated(const BipartiteView& bip, int s, int t) {
    return PairScan(bip, s, t).first_failure();
}

uint64_t trivial_separating_bound(int k) {
    if (k < 0) throw std::invalid_argument("trivial_separating_bound: negative k");
    if (k >= 63) throw std::domain_error("trivial_separating_bound: 2^k overflows");
    return 1ull << k;
}

UncoveredTupleError::UncoveredTupleError(std::vector<int> t)
    : std::runtime_error("covering measure: uncovered tuple " + tuple_to_string(t)),
      tuple(std::move(t)) {}

CoveringMeasure covering_measure_exact(const BipartiteView& bip, int s) {
    check_measure_work(bip, s);
    CoveringMeasure mu{bip, s, CoveringMeasure::Kind::Exact, 0, {}};
    const uint64_t na = static_cast<uint64_t>(bip.a_side().count());

    if (s == 0) {
        const int nb = bip.b_side().count();
        if (nb == 0) throw UncoveredTupleError({});
        const BitRow& b = bip.b_side();
        for (int v = b.first(); v >= 0; v = b.next(v + 1)) mu.mass[v] = Rational(1, nb);
        return mu;
    }

    const Rational denom(ipow(na, s));
    auto cover = cover_rows(bip);
    std::vector<int> uncovered;
    for_each_support(bip, cover, s,
                     [&](const std::vector<int>& support, uint64_t surj, const BitRow& coverset) {
                         const int c = coverset.count();
                         if (c == 0) {
                             // least tuple with this support: pad the sorted
                             // elements with copies of the smallest
                             uncovered.assign(static_cast<size_t>(s) - support.size(), support[0]);
                             uncovered.insert(uncovered.end(), support.begin(), support.end());
                             return false;
                         }
                         Rational term = Rational(surj) / (denom * c);
                         for (int v = coverset.first(); v >= 0; v = coverset.next(v + 1))
                             mu.mass[v] += term;
                         return true;
                     });
    if (!uncovered.empty()) throw UncoveredTupleError(uncovered);
    return mu;
}

CoveringMeasure covering_measure_sample(const BipartiteView& bip, int s, uint64_t samples,
                                        uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("covering measure: need at least one sample");
    if (s < 0) throw std::invalid_argument("covering measure: negative tuple length");
    const std::vector<int> a = bip.a_side().to_vector();
    if (a.empty()) throw std::invalid_argument("covering measure: empty A side");

    Rng rng(seed);
    std::map<int, uint64_t> counts;
    std::vector<int> tuple(static_cast<size_t>(s));
    for (uint64_t i = 0; i < samples; ++i) {
        BitRow coverset = bip.b_side();
        for (int j = 0; j < s; ++j) {
            int av = a[rng.below(a.size())];
            tuple[static_cast<size_t>(j)] = av;
            coverset &= bip.host().neighbors(av);
        }
        const int c = coverset.count();
        if (c == 0) throw UncoveredTupleError(tuple);
        int pick = rng.below_int(c);
        int v = coverset.first();
        while (pick-- > 0) v = coverset.next(v + 1);
        ++counts[v];
    }

    CoveringMeasure mu{bip, s, CoveringMeasure::Kind::Sampled, samples, {}};
    for (const auto& [v, c] : counts) mu.mass[v] = Rational(c, samples);
    return mu;
}

DominationCheck measure_domination_check(const BipartiteView& bip, int s, const BitRow& b_prime) {
    return measure_domination_check(covering_measure_exact(bip, s), b_prime);
}

DominationCheck measure_domination_check(const CoveringMeasure& mu, const BitRow& b_prime) {
    const BipartiteView& bip = mu.bip;
    if (!b_prime.subset_of(bip.b_side()))
        throw std::invalid_argument("measure_domination_check: B' not a subset of B");
    if (mu.kind != CoveringMeasure::Kind::Exact)
        throw std::invalid_argument("measure_domination_check: exact measure required");

    DominationCheck out;
    out.lhs = mu.mass_of(b_prime);

    const uint64_t na = static_cast<uint64_t>(bip.a_side().count());
    if (mu.s == 0) {
        out.rhs = b_prime.any() ? Rational(1) : Rational(0);
    } else {
        uint64_t covered = 0;
        auto cover = cover_rows(bip);
        for_each_support(bip, cover, mu.s,
                         [&](const std::vector<int>&, uint64_t surj, const BitRow& coverset) {
                             if (coverset.intersects(b_prime)) covered += surj;
                             return true;
                         });
        out.rhs = Rational(covered) / Rational(ipow(na, mu.s));
    }
    out.ok = out.lhs <= out.rhs;
    return out;
}

MeasureOnA::MeasureOnA(const BitRow& a, std::map<int, Rational> mass) : mass_(std::move(mass)) {
    Rational total = 0;
    for (const auto& [v, m] : mass_) {
        if (!a.test(v)) throw std::invalid_argument("MeasureOnA: mass outside A");
        if (m < 0) throw std::invalid_argument("MeasureOnA: negative mass");
        total += m;
    }
    if (total != 1) throw std::invalid_argument("MeasureOnA: masses must sum to 1");
}

MeasureOnA MeasureOnA::uniform(const BitRow& a) {
    const int c = a.count();
    if (c == 0) throw std::invalid_argument("MeasureOnA: empty support");
    std::map<int, Rational> m;
    for (int v = a.first(); v >= 0; v = a.next(v + 1)) m[v] = Rational(1, c);
    return MeasureOnA(a, std::move(m));
}

LemmaVerdict lemma1_check(const BipartiteView& bip, const MeasureOnA& mu, const Rational& eps,
                          int k) {
    LemmaVerdict v;
    v.stated_size_premise_holds = bip.a_side().count() >= 2 * k;
    if (!is_separating(bip, k, 0)) {
        v.status = LemmaStatus::PremiseFailed;
        v.failed_premise = "separating";
        return v;
    }
    const BitRow& b = bip.b_side();
    for (int x = b.first(); x >= 0; x = b.next(x + 1)) {
        if (mu.mass_of(bip.neighbors_in_a(x)) >= eps) {
            v.status = LemmaStatus::PremiseFailed;
            v.failed_premise = "lightness";
            return v;
        }
    }
    Rational eps_k = 1;
    for (int i = 0; i < k; ++i) eps_k *= eps;
    v.status = (Rational(b.count()) * eps_k > 1) ? LemmaStatus::ConclusionHolds
                                                 : LemmaStatus::Counterexample;
    return v;
}

LemmaVerdict lemma2_check(const BipartiteView& bip, int s, const BitRow& b_prime,
                          const Rational& eps, double log_base) {
    return lemma2_check(covering_measure_exact(bip, s), b_prime, eps, log_base);
}

LemmaVerdict lemma2_check(const CoveringMeasure& mu, const BitRow& b_prime, const Rational& eps,
                          double log_base) {
    if (eps <= 0) throw std::invalid_argument("lemma2_check: eps must be positive");
    const BipartiteView& bip = mu.bip;
    const int s = mu.s;
    if (!b_prime.subset_of(bip.b_side()))
        throw std::invalid_argument("lemma2_check: B' not a subset of B");
    if (mu.kind != CoveringMeasure::Kind::Exact)
        throw std::invalid_argument("lemma2_check: exact measure required");

    LemmaVerdict v;
    if (mu.mass_of(b_prime) <= eps) {
        v.status = LemmaStatus::PremiseFailed;
        v.failed_premise = "mass";
        return v;
    }
    BitRow covered(bip.host().vertex_count());
    for (int x = b_prime.first(); x >= 0; x = b_prime.next(x + 1)) covered |= bip.neighbors_in_a(x);

    auto lg = [log_base](double x) {
        return log_base > 0.0 ? std::log(x) / std::log(log_base) : std::log(x);
    };
    const double bound =
        (1.0 - lg(1.0 / to_double(eps)) / s) * static_cast<double>(bip.a_side().count());
    v.status = (static_cast<double>(covered.count()) >= bound - 1e-9)
                   ? LemmaStatus::ConclusionHolds
                   : LemmaStatus::Counterexample;
    return v;
}

std::string verdict_to_string(const LemmaVerdict& v) {
    std::ostringstream out;
    switch (v.status) {
        case LemmaStatus::PremiseFailed:
            out << "verdict=premise-failed premise=" << v.failed_premise;
            break;
        case LemmaStatus::ConclusionHolds:
            out << "verdict=conclusion-holds";
            break;
        case LemmaStatus::Counterexample:
            out << "verdict=COUNTEREXAMPLE";
            break;
    }
    if (!v.stated_size_premise_holds) out << " size-hypothesis=violated";
    return out.str();
}

std::string measure_to_text(const CoveringMeasure& mu) {
    std::ostringstream out;
    for (const auto& [v, m] : mu.mass)
        out << v << " " << numerator(m) << " " << denominator(m) << "\n";
    return out.str();
}

}  // namespace ectf
