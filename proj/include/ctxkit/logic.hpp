#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ctxkit/exclusivity.hpp"
#include "ctxkit/rational.hpp"
#include "ctxkit/scenario.hpp"

namespace ctxkit {

/// A logical Bell inequality: a selection of events per context with a
/// nonnegative integer coefficient per context, bounded classically by the
/// weighted independence number of the induced weighted exclusivity graph.
struct LogicalBellInequality {
    std::vector<std::vector<long>> selected_events;  // per context, event ranks
    std::vector<long> coefficients;                  // k_i per context, 1 for plain
    Rational classical_bound;                        // alpha(G, w), the tight bound
};

/// Weighted sum the inequality assigns to a model's tables.
Rational inequality_value(const LogicalBellInequality& ineq, const EmpiricalModel& model);

/// The inequality obtained by selecting each context's possible events with
/// coefficient 1. A model is strongly contextual exactly when it violates
/// this inequality maximally (value |C| against bound |C|-1 or less).
LogicalBellInequality strong_contextuality_inequality(const EmpiricalModel& model,
                                                      int vertex_cap = 2000);

/// Are the per-context event selections jointly satisfiable, i.e. does some
/// global assignment restrict into every selection? Adjacency in the
/// exclusivity graph is logical inconsistency, so this is exactly the
/// existence of a size-|C| independent set meeting every selection.
bool selections_satisfiable(const MeasurementScenario& s,
                            const std::vector<std::vector<long>>& selected_events);

/// Sparse event weighting for CSW inequalities.
struct EventWeight {
    ObservableEvent event;
    Rational weight;
};

struct CswEvaluation {
    Rational value;           // sum of w_i p_i over the model
    Rational classical_bound; // alpha(G, w) of the full exclusivity graph
    bool violated = false;    // value > bound
};

/// Evaluates a CSW inequality given nonnegative weights on observable events.
/// Unlisted events carry weight 0. Throws input_error on weights naming
/// unknown events or negative weights.
CswEvaluation evaluate_csw(const EmpiricalModel& model, const std::vector<EventWeight>& weights,
                           int vertex_cap = 2000);

// --- Lemma 1: hidden variables <-> maximum-size independent sets ------------

/// Forward direction: an independent set of size |C| in the scenario's
/// exclusivity graph determines a global assignment. Throws input_error when
/// the set is smaller than |C| or not independent.
CanonicalHiddenVariable hidden_variable_from_independent_set(
    const MeasurementScenario& s, const std::vector<ObservableEvent>& events);

/// Backward direction: the coarse-grainings of a global assignment, one per
/// context.
std::vector<ObservableEvent> independent_set_from_hidden_variable(
    const MeasurementScenario& s, const CanonicalHiddenVariable& lambda);

// --- hidden-variable linear programs ----------------------------------------

/// Number of canonical hidden variables, d^|M|, as an exact integer.
mpz_class hidden_variable_count(const MeasurementScenario& s);

/// Maximal tau such that the model decomposes as tau * (noncontextual) +
/// (1 - tau) * (nonsignalling): the optimum of the LP over weights on all
/// canonical hidden variables whose induced deterministic tables stay
/// entrywise below the model. Throws cap_error when d^|M| exceeds the cap.
Rational noncontextual_fraction(const EmpiricalModel& model, long hidden_variable_cap = 1L << 20);

/// Feasibility of a global joint distribution on all measurements whose
/// marginals reproduce every context table. On success optionally returns
/// the distribution (indexed like the canonical hidden variables).
bool joint_distribution_exists(const EmpiricalModel& model, long hidden_variable_cap = 1L << 20,
                               std::vector<Rational>* joint_out = nullptr);

// --- the classifier ----------------------------------------------------------

struct ClassificationOptions {
    int vertex_cap = 2000;
    long hidden_variable_cap = 1L << 20;
    int threads = 0;
    /// Run the hidden-variable LPs when they are not already implied and
    /// d^|M| is within the cap.
    bool run_lps = true;
    /// When true the Theorem-2 scan computes the exact minimal independence
    /// number; when false it stops at the first vertex certifying logical
    /// contextuality.
    bool full_minimal_independence = true;
};

struct ClassificationReport {
    bool nonsignalling = true;
    int context_count = 0;
    int support_size = 0;
    long alpha_support = 0;
    std::vector<int> alpha_witness;  // parent-graph vertex indices
    bool strongly_contextual = false;
    bool logically_contextual = false;
    std::optional<int> minimal_independence;        // absent when strong contextuality implies it
    std::optional<int> logical_witness_vertex;      // parent-graph vertex index
    std::optional<ObservableEvent> logical_witness_event;
    std::optional<CanonicalHiddenVariable> global_assignment;  // witness when not strong
    std::optional<bool> noncontextual;              // absent = not computed
    std::optional<Rational> noncontextual_fraction;
    std::optional<std::vector<Rational>> joint_distribution;
    std::vector<std::string> notes;                 // provenance of skipped/implied fields
};

/// Full hierarchy classification: nonsignalling check, Theorem-3 and
/// Theorem-2 graph criteria with witnesses, then the hidden-variable LPs when
/// they still carry information. Throws input_error on signalling input.
ClassificationReport classify(const EmpiricalModel& model, const ClassificationOptions& opt = {});

}  // namespace ctxkit
