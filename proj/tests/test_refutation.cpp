#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "ectf/extension.hpp"
#include "ectf/refutation.hpp"
#include "ectf/search.hpp"
#include "oracles.hpp"

using namespace ectf;

namespace {

RefutationParams parametric(int m, const Rational& theta) {
    RefutationParams p;
    p.m = m;
    p.mode = RefutationMode::Parametric;
    p.theta = theta;
    return p;
}

void check_certificate(const Graph& g, const RefutationTrace& trace) {
    REQUIRE(trace.outcome.kind == RefutationOutcomeKind::Certificate);
    const ViolationCertificate& cert = *trace.outcome.certificate;
    CHECK(cert.level == trace.level);
    CHECK(cert.query.x.count() + cert.query.y.count() <= trace.level);
    CHECK_FALSE(extension_vertex(g, cert.query).has_value());
    for (int u = cert.query.x.first(); u >= 0; u = cert.query.x.next(u + 1))
        CHECK_FALSE(g.neighbors(u).intersects(cert.query.x));
}

}  // namespace

TEST_CASE("tuple_family_pick") {
    ImplicitTupleFamily fam{BitRow::of(8, {2, 5, 7}), 2, {}};
    CHECK(tuple_family_pick(fam) == std::vector<int>{2, 2});
    CHECK(tuple_family_pick(fam, true) == std::vector<int>{2, 5});

    ImplicitTupleFamily covered{BitRow::of(8, {2, 5, 7}), 2, {BitRow::of(8, {2, 5, 7})}};
    CHECK_FALSE(tuple_family_pick(covered).has_value());

    ImplicitTupleFamily partial{BitRow::of(4, {1, 2, 3}), 1, {BitRow::of(4, {1, 2})}};
    CHECK(tuple_family_pick(partial) == std::vector<int>{3});
}

TEST_CASE("tuple_family membership and exact size") {
    ImplicitTupleFamily fam{BitRow::of(6, {0, 1, 2}), 2, {BitRow::of(6, {0, 1})}};
    CHECK(fam.exact_size() == 9 - 4);
    CHECK_FALSE(fam.contains({0, 1}));
    CHECK(fam.contains({0, 2}));

    ImplicitTupleFamily empty_family{BitRow::of(6, {0, 1, 2}), 2, {BitRow::of(6, {0, 1, 2})}};
    CHECK(empty_family.exact_size() == 0);
}

TEST_CASE("tuple_family_lower_bound") {
    ImplicitTupleFamily fam{BitRow::of(8, {1, 2, 3}), 2, {}};
    CHECK(tuple_family_lower_bound(fam, 0.5, 0) == doctest::Approx(9.0));
    CHECK(tuple_family_lower_bound(fam, 0.5, 1) == doctest::Approx(6.75));

    // one forbidden set within the alpha fraction keeps |L_1| above the bound
    for (int v : {1, 2, 3}) {
        ImplicitTupleFamily f1{BitRow::of(8, {1, 2, 3}), 2, {BitRow::of(8, {v})}};
        CHECK(f1.exact_size() >= 7);
    }

    CHECK(tuple_family_lower_bound(fam, 1.0, 1) <= 0.0);
}

TEST_CASE("refute on C5 ends in a verified certificate via the fallback") {
    Graph c5 = make_cycle(5);
    RefutationTrace trace = refute(c5, 3, parametric(1, Rational(1, 4)));
    CHECK(trace.fallback_used);  // the greedy independent set has 2 < m+2 vertices
    check_certificate(c5, trace);
    CHECK(trace.outcome.reason == "graph-too-small");
}

TEST_CASE("refute on Petersen ends in a verified certificate") {
    Graph pete = make_petersen();
    RefutationTrace trace = refute(pete, 6, parametric(2, Rational(1, 4)));
    check_certificate(pete, trace);
}

TEST_CASE("refute branch coverage on structured hosts") {
    // complete bipartite K_{3,3}: the first y kills B outright
    Graph k33(6);
    for (int i = 0; i < 3; ++i)
        for (int j = 3; j < 6; ++j) k33.add_edge(i, j);
    RefutationTrace trace = refute(k33, 3, parametric(1, Rational(1, 4)));
    check_certificate(k33, trace);
    if (!trace.fallback_used) {
        REQUIRE(!trace.steps.empty());
        CHECK(trace.steps.back().branch == "empty-b");
    }
}

TEST_CASE("refute heavy-vertex failure branches on the crown graph") {
    // K_{4,4} minus a perfect matching: every covering-measure neighborhood
    // of a Y-vertex is empty, so no vertex is ever heavy
    Graph crown(8);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) crown.add_edge(i, 4 + j);

    // theta^-1 = 4 < 8 = n: the run cannot invoke the cardinality bound
    RefutationTrace regime = refute(crown, 3, parametric(1, Rational(1, 4)));
    CHECK(regime.outcome.kind == RefutationOutcomeKind::Inconclusive);
    CHECK(regime.outcome.reason == "parameter-regime");
    REQUIRE(!regime.steps.empty());
    CHECK(regime.steps.back().branch == "parameter-regime");

    // theta^-1 = 9 > 8: the bound forces an uncovered pair over B
    RefutationTrace cert = refute(crown, 3, parametric(1, Rational(1, 9)));
    check_certificate(crown, cert);
    REQUIRE(!cert.steps.empty());
    CHECK(cert.steps.back().branch == "separating-by");
    CHECK(cert.outcome.certificate->query.x == BitRow::of(8, {2, 6}));
    CHECK(cert.outcome.certificate->query.y.none());

    // a one-check budget starves the pair scan
    RefutationParams starved = parametric(1, Rational(1, 9));
    starved.pair_search_budget = 1;
    RefutationTrace budget = refute(crown, 3, starved);
    CHECK(budget.outcome.kind == RefutationOutcomeKind::Inconclusive);
    CHECK(budget.outcome.reason == "search-budget");
}

TEST_CASE("refute pivot override") {
    Graph crown(8);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) crown.add_edge(i, 4 + j);

    RefutationParams p = parametric(1, Rational(1, 9));
    p.pivot = 6;  // N(0) = {5,6,7}; default pivot would be 5
    RefutationTrace trace = refute(crown, 3, p);
    CHECK(trace.pivot == 6);
    check_certificate(crown, trace);

    p.pivot = 0;  // outside the independent set
    CHECK_THROWS_AS(refute(crown, 3, p), std::invalid_argument);
}

TEST_CASE("refute guards") {
    Graph pete = make_petersen();
    CHECK_THROWS_AS(refute(make_complete(3), 3, parametric(1, Rational(1, 4))),
                    std::invalid_argument);
    CHECK_THROWS_AS(refute(pete, 2, parametric(1, Rational(1, 4))), std::invalid_argument);
    CHECK_THROWS_AS(refute(pete, 3, parametric(1, Rational(2))), std::invalid_argument);
    RefutationParams no_theta;
    no_theta.m = 1;
    CHECK_THROWS_AS(refute(pete, 3, no_theta), std::invalid_argument);
}

TEST_CASE("parametric runs on random maximal triangle-free graphs") {
    const std::set<std::string> documented{"parameter-regime", "alpha-regime",
                                           "graph-too-small", "search-budget"};
    for (uint64_t seed = 0; seed < 12; ++seed) {
        int n = 20 + static_cast<int>(seed * 3 % 30);
        Graph g = random_maximal_triangle_free(n, seed);
        RefutationTrace trace = refute(g, 6, parametric(2, Rational(1, 4)));
        CHECK(trace.outcome.kind != RefutationOutcomeKind::VertexOverflow);
        if (trace.outcome.kind == RefutationOutcomeKind::Certificate)
            check_certificate(g, trace);
        else
            CHECK(documented.count(trace.outcome.reason) == 1);
    }
}

TEST_CASE("heavy steps satisfy the inductive conditions") {
    // a tiny theta makes nearly every Y-vertex heavy; maximal hosts keep
    // the separating branch from firing immediately
    int runs_with_steps = 0;
    for (uint64_t seed = 0; seed < 30; ++seed) {
        int n = 24 + static_cast<int>(seed % 5) * 8;
        Graph g = random_maximal_triangle_free(n, seed);
        RefutationTrace trace;
        try {
            trace = refute(g, 3, parametric(1, Rational(1, 1000000)));
        } catch (const std::invalid_argument&) {
            continue;
        }
        CHECK(trace.outcome.kind != RefutationOutcomeKind::VertexOverflow);

        // reconstruct the family step by step and validate each condition
        BitRow j_set(g.vertex_count());
        if (trace.pivot >= 0) {
            j_set = BitRow::of(g.vertex_count(), trace.independent_set);
            j_set.reset(trace.pivot);
        }
        ImplicitTupleFamily family{j_set, trace.m, {}};
        std::set<int> seen;
        for (const auto& step : trace.steps) {
            if (!step.w) break;
            ++runs_with_steps;
            CHECK(family.contains(step.y));  // condition 2 for the picked tuple
            CHECK(seen.insert(*step.w).second);  // condition 1: distinct
            for (int v : step.y) CHECK(g.adjacent(*step.w, v));

            if (j_set.count() <= 8) {
                const uint64_t before = family.exact_size();
                family.forbidden.push_back(g.neighbors(*step.w) & j_set);
                const uint64_t after = family.exact_size();
                uint64_t dm = 1;
                for (int i = 0; i < trace.m; ++i)
                    dm *= static_cast<uint64_t>(step.degree_in_j);
                CHECK(before - after <= dm);  // per-step covered-tuple bound
            } else {
                family.forbidden.push_back(g.neighbors(*step.w) & j_set);
            }
        }
    }
    CHECK(runs_with_steps > 0);
}

TEST_CASE("strict gate is refused at desk scale") {
    for (uint64_t n : {16ull, 100ull, 10000ull, 1000000ull}) {
        StrictGate gate = strict_gate(n);
        CHECK_FALSE(gate.admitted);
        CHECK(gate.failing == "inequality (2)");
        CHECK(gate.eps > 1.0);  // 4 / log log n stays above 1 until n ~ e^(e^4)
    }
    CHECK_THROWS_AS(strict_gate(15), std::domain_error);
    CHECK_THROWS_AS(strict_gate(100, 3), std::invalid_argument);
}

TEST_CASE("strict mode refuses the run with a diagnostic") {
    Graph g = random_maximal_triangle_free(40, 5);
    RefutationParams p;
    p.mode = RefutationMode::StrictPaper;

    RefutationTrace low = refute(g, 4, p);
    CHECK(low.outcome.kind == RefutationOutcomeKind::Inconclusive);
    CHECK(low.outcome.reason == "strict-gate: k below 4 log n / log log n");

    RefutationTrace gate = refute(g, 24, p);  // k = 12 >= 4 log 40 / log log 40
    CHECK(gate.outcome.kind == RefutationOutcomeKind::Inconclusive);
    CHECK(gate.outcome.reason == "strict-gate: inequality (2)");

    CHECK_THROWS_AS(refute(g, 6, p), std::invalid_argument);  // not divisible by 4
}

TEST_CASE("trace log format") {
    Graph pete = make_petersen();
    RefutationTrace trace = refute(pete, 6, parametric(2, Rational(1, 4)));
    std::string log = trace_to_log(trace);
    CHECK(log.find("outcome=") != std::string::npos);
    if (trace.outcome.kind == RefutationOutcomeKind::Certificate)
        CHECK(log.find("\"level\":6") != std::string::npos);
    for (const auto& step : trace.steps) {
        (void)step;
        CHECK(log.find("t=1 ") != std::string::npos);
        break;
    }
}
