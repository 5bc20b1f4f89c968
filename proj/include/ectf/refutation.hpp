#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ectf/extension.hpp"
#include "ectf/graph.hpp"
#include "ectf/rational.hpp"

namespace ectf {

enum class RefutationMode { StrictPaper, Parametric };

/**
 * Knobs for the refutation engine. m is the tuple length; theta the
 * heaviness threshold (eps^2 unless overridden); alpha the per-step
 * covered-fraction bound used for the tuple-family diagnostics. Strict
 * mode derives everything from n and refuses the run unless the gate
 * inequalities hold (which they never do at desk scale); parametric mode
 * takes the values as given.
 */
struct RefutationParams {
    int m = 1;
    RefutationMode mode = RefutationMode::Parametric;
    std::optional<Rational> theta;  // defaults to eps^2
    std::optional<Rational> eps;
    std::optional<double> alpha;  // defaults to (3/(2m)) ln(eps^-2)
    std::optional<int> pivot;     // must lie in the independent set; lowest index otherwise
    bool distinct_entries = false;
    uint64_t pair_search_budget = 1u << 20;

    Rational effective_theta() const;
    double effective_alpha() const;
};

/**
 * L_t = J^m minus the m-th powers of the forbidden neighborhoods, kept
 * implicit: membership is a containment test against each forbidden set.
 */
struct ImplicitTupleFamily {
    BitRow j;
    int m = 1;
    std::vector<BitRow> forbidden;

    /// True iff no forbidden set contains every entry of the tuple.
    bool contains(const std::vector<int>& tuple) const;

    /// Members remaining, by enumeration; guarded to |J|^m <= 2^20.
    uint64_t exact_size(bool distinct_entries = false) const;
};

/**
 * Lexicographically least ordered m-tuple over J (repetition allowed
 * unless distinct_entries) surviving every forbidden set; nullopt iff the
 * family is empty.
 */
std::optional<std::vector<int>> tuple_family_pick(const ImplicitTupleFamily& fam,
                                                  bool distinct_entries = false);

/// (1 - t * alpha^m) * |J|^m, the inductive lower bound on |L_t|.
double tuple_family_lower_bound(const ImplicitTupleFamily& fam, double alpha, int t);

enum class RefutationOutcomeKind { Certificate, Inconclusive, VertexOverflow };

struct RefutationStep {
    int t = 0;
    std::vector<int> y;
    int b_size = 0;
    int y_size = 0;
    std::optional<int> w;  // heavy vertex, when the step succeeded
    std::string branch;    // "heavy", "separating-ab", "empty-b", "empty-y",
                           // "separating-by", "parameter-regime", "alpha-regime"
    int degree_in_j = -1;  // |N(w) ∩ J| for successful steps
    int b_floor = -1;      // 2^(m-1), logged once the separating check passes
};

struct RefutationOutcome {
    RefutationOutcomeKind kind = RefutationOutcomeKind::Inconclusive;
    std::optional<ViolationCertificate> certificate;
    std::string reason;  // inconclusive reason or strict-gate diagnostic
    std::vector<int> overflow_vertices;
};

struct RefutationTrace {
    int level = 0;
    int m = 0;
    std::vector<int> independent_set;
    int pivot = -1;
    std::vector<RefutationStep> steps;
    std::vector<int> discovered;  // w_1, w_2, ...
    bool fallback_used = false;   // certificate came from find_violation
    RefutationOutcome outcome;
};

/**
 * Runs the inductive vertex-discovery procedure against a claimed
 * completeness level. Every failure branch is converted into a violation
 * certificate, re-verified via extension_vertex before the trace is
 * returned; branches that cannot conclude at the given parameters yield an
 * explicit Inconclusive reason. Requires a triangle-free input and
 * level >= 3m (the largest query any branch emits).
 */
RefutationTrace refute(const Graph& g, int level, const RefutationParams& params);

/**
 * Strict-mode admission gate: eps = 4/log log n, alpha = (3/k) log(eps^-2)
 * with k = 2m, and the two inequalities alpha^-m > n and
 * (2/k) log(eps^-2) + k/(sqrt(n)-2) <= alpha. Not admitted anywhere near
 * desk scale; the diagnostic names the first failing inequality.
 */
struct StrictGate {
    bool admitted = false;
    std::string failing;  // "inequality (2)" / "inequality (3)" / precondition text
    int k = 0;
    double eps = 0.0;
    double alpha = 0.0;
};

StrictGate strict_gate(uint64_t n, int k);

/// Gate at the smallest even k >= 4 log n / log log n.
StrictGate strict_gate(uint64_t n);

/// One line per step plus a terminating outcome record.
std::string trace_to_log(const RefutationTrace& trace);

}  // namespace ectf
