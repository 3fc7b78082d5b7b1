#include "ctxkit/logic.hpp"

#include <algorithm>

#include "ctxkit/errors.hpp"
#include "ctxkit/graphs.hpp"
#include "ctxkit/simplex.hpp"

namespace ctxkit {

Rational inequality_value(const LogicalBellInequality& ineq, const EmpiricalModel& model) {
    const auto& s = model.scenario();
    if (static_cast<int>(ineq.selected_events.size()) != s.context_count() ||
        static_cast<int>(ineq.coefficients.size()) != s.context_count())
        throw input_error("inequality does not match the scenario's context count");
    Rational total(0);
    for (int c = 0; c < s.context_count(); ++c) {
        Rational ctx_sum(0);
        for (long r : ineq.selected_events[c])
            ctx_sum += model.probability(c, r);
        total += Rational(ineq.coefficients[c]) * ctx_sum;
    }
    return total;
}

LogicalBellInequality strong_contextuality_inequality(const EmpiricalModel& model,
                                                      int vertex_cap) {
    const auto& s = model.scenario();
    LogicalBellInequality ineq;
    ineq.selected_events.resize(s.context_count());
    ineq.coefficients.assign(s.context_count(), 1);
    for (int c = 0; c < s.context_count(); ++c) {
        for (long r = 0; r < s.event_count(c); ++r) {
            if (model.probability(c, r) != 0)
                ineq.selected_events[c].push_back(r);
        }
    }
    ExclusivityGraph support = support_graph(model);
    MisOptions opt;
    opt.vertex_cap = vertex_cap;
    opt.clique_partition = &support.context_of;
    ineq.classical_bound = independence_number(support.adjacency, opt).value;
    return ineq;
}

bool selections_satisfiable(const MeasurementScenario& s,
                            const std::vector<std::vector<long>>& selected_events) {
    if (static_cast<int>(selected_events.size()) != s.context_count())
        throw input_error("selection does not match the scenario's context count");
    // Depth-first search for one event per context, pairwise consistent.
    std::vector<Outcome> partial(s.measurement_count(), 0);
    std::vector<bool> fixed(s.measurement_count(), false);

    auto dfs = [&](auto&& self, int c) -> bool {
        if (c == s.context_count())
            return true;
        const auto& ctx = s.context(c);
        for (long r : selected_events[c]) {
            const auto outcomes = s.unrank_outcomes(c, r);
            bool ok = true;
            std::vector<int> newly_fixed;
            for (size_t i = 0; i < ctx.size() && ok; ++i) {
                const int m = ctx[i];
                if (fixed[m]) {
                    ok = partial[m] == outcomes[i];
                } else {
                    fixed[m] = true;
                    partial[m] = outcomes[i];
                    newly_fixed.push_back(m);
                }
            }
            if (ok && self(self, c + 1))
                return true;
            for (int m : newly_fixed)
                fixed[m] = false;
        }
        return false;
    };
    return dfs(dfs, 0);
}

CswEvaluation evaluate_csw(const EmpiricalModel& model, const std::vector<EventWeight>& weights,
                           int vertex_cap) {
    const auto& s = model.scenario();
    ExclusivityGraph g = exclusivity_graph(s);
    std::vector<Rational> w(g.vertex_count(), Rational(0));

    // vertex offsets per context
    std::vector<long> first(s.context_count() + 1, 0);
    for (int c = 0; c < s.context_count(); ++c)
        first[c + 1] = first[c] + s.event_count(c);

    CswEvaluation eval;
    eval.value = 0;
    for (const EventWeight& ew : weights) {
        if (ew.weight < 0)
            throw input_error("negative CSW weight");
        if (ew.event.context < 0 || ew.event.context >= s.context_count())
            throw input_error("CSW weight names an unknown context");
        const long r = s.rank_outcomes(ew.event.context, ew.event.outcomes);
        w[first[ew.event.context] + r] += ew.weight;
        eval.value += ew.weight * model.probability(ew.event.context, r);
    }
    MisOptions opt;
    opt.vertex_cap = vertex_cap;
    eval.classical_bound = independence_number(g.adjacency, w, opt).value;
    eval.violated = eval.value > eval.classical_bound;
    return eval;
}

CanonicalHiddenVariable hidden_variable_from_independent_set(
    const MeasurementScenario& s, const std::vector<ObservableEvent>& events) {
    if (static_cast<int>(events.size()) < s.context_count())
        throw input_error("independent set has fewer events than contexts; no total "
                          "assignment is guaranteed");
    if (static_cast<int>(events.size()) > s.context_count())
        throw input_error("more events than contexts; the set cannot be independent");

    CanonicalHiddenVariable lambda;
    lambda.outcomes.assign(s.measurement_count(), 0);
    std::vector<bool> fixed(s.measurement_count(), false);
    std::vector<bool> context_seen(s.context_count(), false);
    for (const ObservableEvent& e : events) {
        if (e.context < 0 || e.context >= s.context_count())
            throw input_error("event names an unknown context");
        if (context_seen[e.context])
            throw input_error("two events of one context cannot be independent");
        context_seen[e.context] = true;
        const auto& ctx = s.context(e.context);
        if (e.outcomes.size() != ctx.size())
            throw input_error("event outcome tuple has the wrong length");
        for (size_t i = 0; i < ctx.size(); ++i) {
            const int m = ctx[i];
            if (fixed[m] && lambda.outcomes[m] != e.outcomes[i])
                throw input_error("events disagree on measurement '" + s.measurement_name(m) +
                                  "'; the set is not independent");
            fixed[m] = true;
            lambda.outcomes[m] = e.outcomes[i];
        }
    }
    return lambda;
}

std::vector<ObservableEvent> independent_set_from_hidden_variable(
    const MeasurementScenario& s, const CanonicalHiddenVariable& lambda) {
    if (static_cast<int>(lambda.outcomes.size()) != s.measurement_count())
        throw input_error("hidden variable must be total on the measurements");
    std::vector<ObservableEvent> events;
    events.reserve(s.context_count());
    for (int c = 0; c < s.context_count(); ++c)
        events.push_back(lambda.restrict_to_context(s, c));
    return events;
}

mpz_class hidden_variable_count(const MeasurementScenario& s) {
    mpz_class n;
    mpz_ui_pow_ui(n.get_mpz_t(), s.outcome_arity(), s.measurement_count());
    return n;
}

namespace {

/// Enumerates canonical hidden variables as mixed-radix digit strings and
/// yields, per context, the rank of the restricted event.
struct HiddenVariableTable {
    long count = 0;
    // restriction_rank[c][lambda_index] = event rank of lambda|_C
    std::vector<std::vector<long>> restriction_rank;

    HiddenVariableTable(const MeasurementScenario& s, long cap) {
        const mpz_class total = hidden_variable_count(s);
        if (total > cap)
            throw cap_error("hidden-variable LP needs " + total.get_str() +
                            " columns, above the cap of " + std::to_string(cap) +
                            " (raise --cap-hv or CTXKIT_CAP_HV to override)");
        count = total.get_si();
        const int d = s.outcome_arity();
        const int m = s.measurement_count();
        restriction_rank.assign(s.context_count(), std::vector<long>(count, 0));
        std::vector<Outcome> lambda(m, 0);
        for (long idx = 0; idx < count; ++idx) {
            long r = idx;
            for (int i = m - 1; i >= 0; --i) {
                lambda[i] = static_cast<Outcome>(r % d);
                r /= d;
            }
            for (int c = 0; c < s.context_count(); ++c) {
                long rank = 0;
                for (int mm : s.context(c))
                    rank = rank * d + lambda[mm];
                restriction_rank[c][idx] = rank;
            }
        }
    }
};

}  // namespace

Rational noncontextual_fraction(const EmpiricalModel& model, long hidden_variable_cap) {
    const auto& s = model.scenario();
    HiddenVariableTable hv(s, hidden_variable_cap);

    LinearProgram lp;
    lp.variable_count = static_cast<int>(hv.count);
    lp.objective.assign(hv.count, Rational(1));
    for (int c = 0; c < s.context_count(); ++c) {
        for (long r = 0; r < s.event_count(c); ++r) {
            LinearConstraint row;
            row.coefficients.assign(hv.count, Rational(0));
            for (long idx = 0; idx < hv.count; ++idx) {
                if (hv.restriction_rank[c][idx] == r)
                    row.coefficients[idx] = 1;
            }
            row.relation = LinearConstraint::Relation::LessEq;
            row.rhs = model.probability(c, r);
            lp.constraints.push_back(std::move(row));
        }
    }
    SimplexResult r = solve_lp(lp);
    if (r.status != SimplexResult::Status::Optimal)
        throw std::logic_error("noncontextual-fraction LP must be feasible and bounded");
    return r.value;
}

bool joint_distribution_exists(const EmpiricalModel& model, long hidden_variable_cap,
                               std::vector<Rational>* joint_out) {
    const auto& s = model.scenario();
    HiddenVariableTable hv(s, hidden_variable_cap);

    LinearProgram lp;
    lp.variable_count = static_cast<int>(hv.count);
    lp.objective.assign(hv.count, Rational(0));
    for (int c = 0; c < s.context_count(); ++c) {
        for (long r = 0; r < s.event_count(c); ++r) {
            LinearConstraint row;
            row.coefficients.assign(hv.count, Rational(0));
            for (long idx = 0; idx < hv.count; ++idx) {
                if (hv.restriction_rank[c][idx] == r)
                    row.coefficients[idx] = 1;
            }
            row.relation = LinearConstraint::Relation::Eq;
            row.rhs = model.probability(c, r);
            lp.constraints.push_back(std::move(row));
        }
    }
    SimplexResult r = solve_lp(lp);
    if (r.status == SimplexResult::Status::Infeasible)
        return false;
    if (r.status != SimplexResult::Status::Optimal)
        throw std::logic_error("joint feasibility LP cannot be unbounded");
    if (joint_out != nullptr)
        *joint_out = r.solution;
    return true;
}

ClassificationReport classify(const EmpiricalModel& model, const ClassificationOptions& opt) {
    const auto& s = model.scenario();
    ClassificationReport report;
    report.context_count = s.context_count();

    const NonsignallingReport ns = is_nonsignalling(model);
    if (!ns.holds) {
        throw input_error("model is signalling: contexts " +
                          std::to_string(ns.violating_pair->first) + " and " +
                          std::to_string(ns.violating_pair->second) +
                          " disagree on their intersection");
    }
    report.nonsignalling = true;

    // Strong contextuality: no independent set of the support graph picks
    // one possible event from every context.
    ExclusivityGraph support = support_graph(model);
    report.support_size = support.vertex_count();
    MisOptions mis_opt;
    mis_opt.vertex_cap = opt.vertex_cap;
    mis_opt.clique_partition = &support.context_of;
    MisResult alpha = independence_number(support.adjacency, mis_opt);
    report.alpha_support = alpha.value.get_num().get_si();
    for (int v : alpha.witness)
        report.alpha_witness.push_back(support.original_index[v]);
    report.strongly_contextual = report.alpha_support < report.context_count;

    if (!report.strongly_contextual) {
        // The alpha witness has one possible event per context; by the
        // hidden-variable/independent-set correspondence it names a global
        // assignment that stays possible everywhere.
        std::vector<ObservableEvent> witness_events;
        for (int v : alpha.witness)
            witness_events.push_back(support.events[v]);
        report.global_assignment = hidden_variable_from_independent_set(s, witness_events);
    }

    // Logical contextuality: some possible event extends to no full
    // transversal of possible events.
    if (report.strongly_contextual) {
        report.logically_contextual = true;
        report.notes.push_back("logical contextuality implied: alpha(support) < contexts");
    } else if (opt.full_minimal_independence) {
        MisOptions scan_opt;
        scan_opt.vertex_cap = opt.vertex_cap;
        MinIndependenceResult min = minimal_independence_number(support.adjacency, opt.threads,
                                                                scan_opt);
        report.minimal_independence = min.value;
        report.logically_contextual = min.value < report.context_count;
        if (report.logically_contextual) {
            report.logical_witness_vertex = support.original_index[min.witness_vertex];
            report.logical_witness_event = support.events[min.witness_vertex];
        }
    } else {
        MisOptions scan_opt;
        scan_opt.vertex_cap = opt.vertex_cap;
        auto hit = find_vertex_with_degree_below(support.adjacency, report.context_count,
                                                 opt.threads, scan_opt);
        report.logically_contextual = hit.has_value();
        if (hit.has_value()) {
            report.logical_witness_vertex = support.original_index[*hit];
            report.logical_witness_event = support.events[*hit];
        }
        report.notes.push_back("minimal independence number not computed: predicate mode");
    }

    // Hierarchy implications settle the LP questions when they fire.
    if (report.logically_contextual) {
        report.noncontextual = false;
        report.notes.push_back("noncontextual = false implied: model is logically contextual");
    }
    if (report.strongly_contextual) {
        report.noncontextual_fraction = Rational(0);
        report.notes.push_back("noncontextual fraction = 0 implied: alpha(support) < contexts");
    }

    const bool under_cap = hidden_variable_count(s) <= opt.hidden_variable_cap;
    if (opt.run_lps && under_cap) {
        if (!report.noncontextual.has_value()) {
            std::vector<Rational> joint;
            const bool feasible = joint_distribution_exists(model, opt.hidden_variable_cap,
                                                            &joint);
            report.noncontextual = feasible;
            if (feasible)
                report.joint_distribution = std::move(joint);
        }
        if (!report.noncontextual_fraction.has_value()) {
            if (report.noncontextual == true) {
                report.noncontextual_fraction = Rational(1);
                report.notes.push_back("noncontextual fraction = 1 implied: joint LP feasible");
            } else {
                report.noncontextual_fraction =
                    noncontextual_fraction(model, opt.hidden_variable_cap);
            }
        }
    } else {
        if (!report.noncontextual.has_value())
            report.notes.push_back("noncontextual verdict not computed: " +
                                   std::string(opt.run_lps ? "hidden-variable count above cap"
                                                           : "LPs disabled"));
        if (!report.noncontextual_fraction.has_value())
            report.notes.push_back("noncontextual fraction not computed: " +
                                   std::string(opt.run_lps ? "hidden-variable count above cap"
                                                           : "LPs disabled"));
    }
    return report;
}

}  // namespace ctxkit
