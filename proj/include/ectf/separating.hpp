#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ectf/graph.hpp"
#include "ectf/rational.hpp"

namespace ectf {

/// Disjoint (S, T) over A with no B-vertex joined to all of S and none of T.
struct SeparatingWitness {
    BitRow s_set;
    BitRow t_set;
};

/**
 * (s,t)-separating for A: every disjoint pair S, T of subsets of A with
 * |S| <= s, |T| <= t has a vertex of B adjacent (in the view) to all of S
 * and none of T.
 */
bool is_separating(const BipartiteView& bip, int s, int t);

/// Least failing pair by (|S|+|T|, S, T), or nullopt when separating.
std::optional<SeparatingWitness> find_unseparated(const BipartiteView& bip, int s, int t);

/// 2^k; every (k,k)-separating view satisfies |B| >= 2^k. Guards k >= 63.
uint64_t trivial_separating_bound(int k);

/// Raised when a measure operation meets an s-tuple no B-vertex covers.
struct UncoveredTupleError : std::runtime_error {
    explicit UncoveredTupleError(std::vector<int> t);
    std::vector<int> tuple;
};

/**
 * Distribution over B induced by sampling an ordered s-tuple of A
 * uniformly with repetition, then a uniform B-vertex covering it. Exact
 * masses are rationals summing to exactly 1; sampled masses are empirical
 * frequencies (count/samples, also exact rationals).
 */
struct CoveringMeasure {
    enum class Kind { Exact, Sampled };

    BipartiteView bip;
    int s = 0;
    Kind kind = Kind::Exact;
    uint64_t samples = 0;  // 0 in exact mode
    std::map<int, Rational> mass;

    Rational mass_of(int v) const {
        auto it = mass.find(v);
        return it == mass.end() ? Rational(0) : it->second;
    }

    Rational mass_of(const BitRow& set) const {
        Rational total = 0;
        for (const auto& [v, m] : mass)
            if (set.test(v)) total += m;
        return total;
    }

    Rational total_mass() const {
        Rational total = 0;
        for (const auto& [v, m] : mass) total += m;
        return total;
    }
};

/**
 * Exact covering measure. Requires a nonempty A, an (s,0)-separating view
 * (otherwise throws UncoveredTupleError naming an uncovered tuple), and a
 * bounded amount of work: s <= 4 and (#supports * |B|) within a fixed
 * budget.
 */
CoveringMeasure covering_measure_exact(const BipartiteView& bip, int s);

/// Monte Carlo estimate via the two-stage sampling procedure; deterministic per seed.
CoveringMeasure covering_measure_sample(const BipartiteView& bip, int s, uint64_t samples,
                                        uint64_t seed);

struct DominationCheck {
    Rational lhs;  // mu(B')
    Rational rhs;  // P(tuple covered by some x in B')
    bool ok = false;
};

/// mu(B') <= P(X_1..X_s in N(x) for some x in B'), checked exactly.
DominationCheck measure_domination_check(const BipartiteView& bip, int s, const BitRow& b_prime);

/// Same check against a precomputed exact measure (for sweeps).
DominationCheck measure_domination_check(const CoveringMeasure& mu, const BitRow& b_prime);

/// Probability mass function on A with exact rational masses summing to 1.
class MeasureOnA {
public:
    MeasureOnA(const BitRow& a, std::map<int, Rational> mass);

    static MeasureOnA uniform(const BitRow& a);

    Rational mass_of(const BitRow& set) const {
        Rational total = 0;
        for (const auto& [v, m] : mass_)
            if (set.test(v)) total += m;
        return total;
    }

    const std::map<int, Rational>& mass() const { return mass_; }

private:
    std::map<int, Rational> mass_;
};

enum class LemmaStatus { PremiseFailed, ConclusionHolds, Counterexample };

struct LemmaVerdict {
    LemmaStatus status = LemmaStatus::PremiseFailed;
    std::string failed_premise;             // set when status == PremiseFailed
    bool stated_size_premise_holds = true;  // |A| >= 2k, reported but not enforced
};

/**
 * Validator for the weighted separation bound: if the view is
 * (k,0)-separating for A and mu(N(x)) < eps for every x in B, then
 * |B| > 1/eps^k. Counterexample status must never occur; it exists to
 * catch implementation bugs. The |A| >= 2k hypothesis is reported via
 * stated_size_premise_holds but the conclusion is tested regardless.
 */
LemmaVerdict lemma1_check(const BipartiteView& bip, const MeasureOnA& mu, const Rational& eps,
                          int k);

/**
 * Validator for neighborhood expansion: if mu_{G,s,A}(B') > eps then the
 * union of N(x) over B' covers at least (1 - log(1/eps)/s)|A| vertices.
 * Logarithm base configurable, natural by default (log_base <= 0).
 */
LemmaVerdict lemma2_check(const BipartiteView& bip, int s, const BitRow& b_prime,
                          const Rational& eps, double log_base = 0.0);

/// Same check against a precomputed exact measure (for sweeps).
LemmaVerdict lemma2_check(const CoveringMeasure& mu, const BitRow& b_prime, const Rational& eps,
                          double log_base = 0.0);

std::string verdict_to_string(const LemmaVerdict& v);

/// "vertex numerator denominator" lines sorted by vertex.
std::string measure_to_text(const CoveringMeasure& mu);

}  // namespace ectf
