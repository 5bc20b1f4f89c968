#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ectf/graph.hpp"
#include "ectf/rng.hpp"
#include "ectf/separating.hpp"
#include "oracles.hpp"

using namespace ectf;

namespace {

/// Bipartite host on a-count + b-count vertices; columns[k] is the
/// neighborhood mask (over A) of the k-th B-vertex.
BipartiteView view_from_columns(int a_count, const std::vector<uint32_t>& columns) {
    const int n = a_count + static_cast<int>(columns.size());
    Graph g(n);
    for (size_t k = 0; k < columns.size(); ++k)
        for (int i = 0; i < a_count; ++i)
            if (columns[k] >> i & 1) g.add_edge(i, a_count + static_cast<int>(k));
    BitRow a(n), b(n);
    for (int i = 0; i < a_count; ++i) a.set(i);
    for (size_t k = 0; k < columns.size(); ++k) b.set(a_count + static_cast<int>(k));
    return induced_bipartite(g, a, b);
}

/// The measure fixture: A = {a1, a2}, N(b1) = {a1, a2}, N(b2) = {a1}.
BipartiteView fixture_view() { return view_from_columns(2, {0b11, 0b01}); }

BipartiteView random_view(Rng& rng, int max_a, int max_b, double p) {
    const int a_count = 1 + rng.below_int(max_a);
    const int b_count = 1 + rng.below_int(max_b);
    std::vector<uint32_t> cols(static_cast<size_t>(b_count), 0);
    for (auto& c : cols)
        for (int i = 0; i < a_count; ++i)
            if (rng.unit() < p) c |= 1u << i;
    return view_from_columns(a_count, cols);
}

}  // namespace

TEST_CASE("is_separating fixtures") {
    // power-set construction: all 8 subsets of a 3-set as neighborhoods
    std::vector<uint32_t> cols;
    for (uint32_t m = 0; m < 8; ++m) cols.push_back(m);
    CHECK(is_separating(view_from_columns(3, cols), 3, 3));

    // crown: b_i adjacent to all but a_i
    BipartiteView crown = view_from_columns(3, {0b110, 0b101, 0b011});
    CHECK(is_separating(crown, 1, 1));
    CHECK_FALSE(is_separating(crown, 3, 0));
    auto w = find_unseparated(crown, 3, 0);
    REQUIRE(w.has_value());
    CHECK(w->s_set == crown.a_side());
    CHECK(w->t_set.none());

    // empty B
    Graph g(2);
    BitRow a(2);
    a.set(0);
    CHECK_FALSE(is_separating(induced_bipartite(g, a, BitRow(2)), 0, 0));
}

TEST_CASE("is_separating agrees with the naive oracle") {
    Rng rng(3);
    for (int round = 0; round < 150; ++round) {
        BipartiteView v = random_view(rng, 5, 6, 0.45);
        std::vector<int> a = v.a_side().to_vector();
        std::vector<int> b = v.b_side().to_vector();
        for (int s = 0; s <= 2; ++s)
            for (int t = 0; t <= 2; ++t)
                CHECK(is_separating(v, s, t) ==
                      oracles::separating_naive(v.host(), a, b, s, t));
    }
}

TEST_CASE("trivial_separating_bound") {
    CHECK(trivial_separating_bound(0) == 1);
    CHECK(trivial_separating_bound(5) == 32);
    CHECK_THROWS_AS(trivial_separating_bound(63), std::domain_error);

    // every (k,k)-separating instance found at random satisfies |B| >= 2^k;
    // |A| = k keeps such instances frequent and the bound tight
    Rng rng(17);
    for (int k = 1; k <= 2; ++k) {
        int found = 0, attempts = 0;
        while (found < 60 && ++attempts < 20000) {
            const int nb = 1 + rng.below_int((1 << k) + 3);
            std::vector<uint32_t> cols(static_cast<size_t>(nb));
            for (auto& c : cols) c = static_cast<uint32_t>(rng.below(1u << k));
            BipartiteView v = view_from_columns(k, cols);
            if (!is_separating(v, k, k)) continue;
            ++found;
            CHECK(static_cast<uint64_t>(v.b_side().count()) >= trivial_separating_bound(k));
        }
        CHECK(found >= 60);
    }
}

TEST_CASE("covering_measure_exact fixture") {
    CoveringMeasure mu = covering_measure_exact(fixture_view(), 1);
    CHECK(mu.mass_of(2) == Rational(3, 4));  // b1 sits at vertex 2
    CHECK(mu.mass_of(3) == Rational(1, 4));
    CHECK(mu.total_mass() == 1);
    CHECK(measure_to_text(mu) == "2 3 4\n3 1 4\n");
}

TEST_CASE("covering_measure_exact degenerate shapes") {
    // single B-vertex adjacent to all of A
    BipartiteView solo = view_from_columns(3, {0b111});
    for (int s = 1; s <= 3; ++s) {
        CoveringMeasure mu = covering_measure_exact(solo, s);
        CHECK(mu.mass_of(3) == 1);
    }

    // two B-vertices with identical full neighborhoods split the mass
    BipartiteView twins = view_from_columns(2, {0b11, 0b11});
    CoveringMeasure mu = covering_measure_exact(twins, 2);
    CHECK(mu.mass_of(2) == Rational(1, 2));
    CHECK(mu.mass_of(3) == Rational(1, 2));

    // uncovered tuple reported by value
    BipartiteView gap = view_from_columns(2, {0b01});
    CHECK_THROWS_AS(covering_measure_exact(gap, 1), UncoveredTupleError);
    try {
        covering_measure_exact(gap, 1);
    } catch (const UncoveredTupleError& err) {
        CHECK(err.tuple == std::vector<int>{1});
    }
}

TEST_CASE("exact masses sum to one on random separating instances") {
    Rng rng(23);
    int found = 0;
    while (found < 60) {
        BipartiteView v = random_view(rng, 5, 6, 0.6);
        for (int s = 1; s <= 2; ++s) {
            if (!is_separating(v, s, 0)) continue;
            ++found;
            CoveringMeasure mu = covering_measure_exact(v, s);
            CHECK(mu.total_mass() == 1);
            for (const auto& [vertex, m] : mu.mass) {
                CHECK(m >= 0);
                CHECK(v.b_side().test(vertex));
            }
        }
    }
}

TEST_CASE("covering_measure_sample") {
    BipartiteView fix = fixture_view();
    CoveringMeasure mc = covering_measure_sample(fix, 1, 1000000, 42);
    CHECK(std::abs(to_double(mc.mass_of(2)) - 0.75) < 0.005);
    CHECK(std::abs(to_double(mc.mass_of(3)) - 0.25) < 0.005);
    CHECK(mc.total_mass() == 1);

    CoveringMeasure again = covering_measure_sample(fix, 1, 10000, 42);
    CoveringMeasure again2 = covering_measure_sample(fix, 1, 10000, 42);
    CHECK(again.mass == again2.mass);

    CoveringMeasure one = covering_measure_sample(fix, 1, 1, 7);
    CHECK(one.mass.size() == 1);
    CHECK(one.mass.begin()->second == 1);
}

TEST_CASE("measure_domination_check fixtures") {
    BipartiteView fix = fixture_view();
    const BitRow& b = fix.b_side();

    DominationCheck all = measure_domination_check(fix, 1, b);
    CHECK(all.lhs == 1);
    CHECK(all.rhs == 1);
    CHECK(all.ok);

    DominationCheck none = measure_domination_check(fix, 1, BitRow(b.universe()));
    CHECK(none.lhs == 0);
    CHECK(none.rhs == 0);
    CHECK(none.ok);

    DominationCheck b2 = measure_domination_check(fix, 1, BitRow::of(b.universe(), {3}));
    CHECK(b2.lhs == Rational(1, 4));
    CHECK(b2.rhs == Rational(1, 2));
    CHECK(b2.ok);
}

TEST_CASE("lemma1 validator") {
    // vacuous case: not (k,0)-separating
    BipartiteView gap = view_from_columns(2, {0b01});
    LemmaVerdict v1 = lemma1_check(gap, MeasureOnA::uniform(gap.a_side()), Rational(1, 2), 1);
    CHECK(v1.status == LemmaStatus::PremiseFailed);
    CHECK(v1.failed_premise == "separating");

    // power-set over |A| = 4 = 2k, uniform measure, eps just above 1
    std::vector<uint32_t> cols;
    for (uint32_t m = 0; m < 16; ++m) cols.push_back(m);
    BipartiteView pow = view_from_columns(4, cols);
    LemmaVerdict v2 = lemma1_check(pow, MeasureOnA::uniform(pow.a_side()), Rational(101, 100), 2);
    CHECK(v2.status == LemmaStatus::ConclusionHolds);
    CHECK(v2.stated_size_premise_holds);

    // randomized premise-satisfying instances (one light column per pair
    // guarantees (2,0)-separating with every degree below 0.6|A|): the
    // conclusion must hold every time
    Rng rng(29);
    for (int round = 0; round < 200; ++round) {
        const int na = 4 + rng.below_int(5);
        const int limit = (3 * na - 1) / 5;  // largest degree with deg/na < 3/5
        std::vector<uint32_t> cols;
        for (int i = 0; i < na; ++i)
            for (int j = i + 1; j < na; ++j) {
                uint32_t c = (1u << i) | (1u << j);
                while (std::popcount(c) < limit && rng.below(2) == 0)
                    c |= 1u << rng.below_int(na);
                cols.push_back(c);
            }
        BipartiteView v = view_from_columns(na, cols);
        LemmaVerdict out = lemma1_check(v, MeasureOnA::uniform(v.a_side()), Rational(3, 5), 2);
        CHECK(out.status == LemmaStatus::ConclusionHolds);
        CHECK(static_cast<uint64_t>(v.b_side().count()) >= 3);  // > 1/0.36
    }
}

TEST_CASE("lemma1 with a non-uniform rational measure") {
    Rng rng(31);
    int verified = 0, attempts = 0;
    while (verified < 100 && ++attempts < 40000) {
        const int na = 4 + rng.below_int(5);
        std::vector<uint32_t> cols;
        for (int i = 0; i < na; ++i)
            for (int j = i + 1; j < na; ++j) cols.push_back((1u << i) | (1u << j));
        BipartiteView v = view_from_columns(na, cols);

        std::map<int, Rational> weights;
        uint64_t total = 0;
        std::vector<uint64_t> raw;
        for (int i = 0; i < na; ++i) {
            raw.push_back(1 + rng.below(9));
            total += raw.back();
        }
        for (int i = 0; i < na; ++i) weights[i] = Rational(raw[static_cast<size_t>(i)], total);
        LemmaVerdict out =
            lemma1_check(v, MeasureOnA(v.a_side(), weights), Rational(7, 10), 2);
        // the view is (2,0)-separating by construction, so only the
        // lightness premise can rule an instance out
        CHECK(out.status != LemmaStatus::Counterexample);
        if (out.status == LemmaStatus::ConclusionHolds) ++verified;
    }
    CHECK(verified >= 100);
}

TEST_CASE("lemma2 validator") {
    BipartiteView fix = fixture_view();
    LemmaVerdict all = lemma2_check(fix, 1, fix.b_side(), Rational(1, 2));
    CHECK(all.status == LemmaStatus::ConclusionHolds);

    LemmaVerdict tiny = lemma2_check(fix, 1, BitRow::of(fix.b_side().universe(), {3}),
                                     Rational(1, 2));
    CHECK(tiny.status == LemmaStatus::PremiseFailed);
    CHECK(tiny.failed_premise == "mass");

    CHECK_THROWS_AS(lemma2_check(fix, 1, fix.b_side(), Rational(0)), std::invalid_argument);
}

TEST_CASE("lemma2 exhaustive small sweep") {
    // all B-multisets over |A| <= 4, |B| <= 5, s <= 2, eps grid
    const std::vector<Rational> eps_grid{Rational(1, 10), Rational(3, 10), Rational(1, 2)};
    uint64_t counterexamples = 0, instances = 0;
    for (int a_count = 1; a_count <= 4; ++a_count) {
        const uint32_t mask_end = 1u << a_count;
        std::vector<uint32_t> cols;
        std::function<void(uint32_t, int)> rec = [&](uint32_t min_col, int remaining) {
            if (!cols.empty()) {
                BipartiteView v = view_from_columns(a_count, cols);
                for (int s = 1; s <= 2; ++s) {
                    if (!is_separating(v, s, 0)) continue;
                    CoveringMeasure mu = covering_measure_exact(v, s);
                    const int nb = static_cast<int>(cols.size());
                    for (uint32_t bp = 0; bp < (1u << nb); ++bp) {
                        BitRow b_prime(v.host().vertex_count());
                        for (int k = 0; k < nb; ++k)
                            if (bp >> k & 1) b_prime.set(a_count + k);
                        for (const Rational& eps : eps_grid) {
                            LemmaVerdict out = lemma2_check(mu, b_prime, eps);
                            if (out.status == LemmaStatus::Counterexample) ++counterexamples;
                            if (out.status != LemmaStatus::PremiseFailed) ++instances;
                        }
                    }
                }
            }
            if (remaining == 0) return;
            for (uint32_t c = min_col; c < mask_end; ++c) {
                cols.push_back(c);
                rec(c, remaining - 1);
                cols.pop_back();
            }
        };
        rec(0, 5);
    }
    CHECK(counterexamples == 0);
    CHECK(instances > 1000);
}

TEST_CASE("verdict serialization") {
    LemmaVerdict v;
    v.status = LemmaStatus::PremiseFailed;
    v.failed_premise = "separating";
    CHECK(verdict_to_string(v) == "verdict=premise-failed premise=separating");
    v.status = LemmaStatus::ConclusionHolds;
    v.stated_size_premise_holds = false;
    CHECK(verdict_to_string(v) == "verdict=conclusion-holds size-hypothesis=violated");
}

TEST_CASE("measure work guard") {
    // 70 A-vertices against 5 B-vertices at s = 4 exceeds the work budget
    Graph g(75);
    BitRow a(75), b(75);
    for (int i = 0; i < 70; ++i) a.set(i);
    for (int k = 70; k < 75; ++k) {
        b.set(k);
        for (int i = 0; i < 70; ++i) g.add_edge(i, k);
    }
    CHECK_THROWS_AS(covering_measure_exact(induced_bipartite(g, a, b), 4),
                    std::invalid_argument);
    CHECK_THROWS_AS(covering_measure_exact(induced_bipartite(g, a, b), 5),
                    std::invalid_argument);
    // tuple lengths within the guard still work
    CHECK(covering_measure_exact(induced_bipartite(g, a, b), 2).total_mass() == 1);
}
