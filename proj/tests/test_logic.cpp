#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ctxkit/catalog.hpp"
#include "ctxkit/errors.hpp"
#include "ctxkit/graphs.hpp"
#include "ctxkit/logic.hpp"
#include "oracles.hpp"

using namespace ctxkit;

TEST_CASE("CSW evaluation with the CHSH weighting") {
    const auto weights = chsh_weights();
    SUBCASE("Bell state: 13/4 against bound 3") {
        const auto eval = evaluate_csw(catalog_model("bell_table"), weights);
        CHECK(eval.value == Rational(13, 4));
        CHECK(eval.classical_bound == 3);
        CHECK(eval.violated);
    }
    SUBCASE("PR box: 4 against bound 3") {
        const auto eval = evaluate_csw(catalog_model("pr_box"), weights);
        CHECK(eval.value == 4);
        CHECK(eval.classical_bound == 3);
        CHECK(eval.violated);
    }
    SUBCASE("every deterministic model stays within the bound") {
        const auto s = bell_scenario();
        for (int mask = 0; mask < 16; ++mask) {
            CanonicalHiddenVariable lambda;
            for (int m = 0; m < 4; ++m)
                lambda.outcomes.push_back(static_cast<Outcome>((mask >> m) & 1));
            const auto eval =
                evaluate_csw(induced_model_of_hidden_variable(lambda, s), weights);
            CHECK(eval.value <= 3);
            CHECK_FALSE(eval.violated);
        }
    }
    SUBCASE("weight on an unknown event is rejected") {
        std::vector<EventWeight> bad{{ObservableEvent{7, {0, 0}}, Rational(1)}};
        CHECK_THROWS_AS(evaluate_csw(catalog_model("pr_box"), bad), input_error);
        std::vector<EventWeight> negative{{ObservableEvent{0, {0, 0}}, Rational(-1)}};
        CHECK_THROWS_AS(evaluate_csw(catalog_model("pr_box"), negative), input_error);
    }
}

TEST_CASE("strong-contextuality inequality") {
    SUBCASE("PR box: bound 3, value 4") {
        const auto model = catalog_model("pr_box");
        const auto ineq = strong_contextuality_inequality(model);
        CHECK(ineq.classical_bound == 3);
        CHECK(inequality_value(ineq, model) == 4);
    }
    SUBCASE("Bell state: bound 4 = contexts, no violation this way") {
        const auto model = catalog_model("bell_table");
        const auto ineq = strong_contextuality_inequality(model);
        CHECK(ineq.classical_bound == 4);
        CHECK(inequality_value(ineq, model) == 4);
    }
    SUBCASE("deterministic model: bound 4, value 4") {
        CanonicalHiddenVariable lambda{{0, 0, 0, 0}};
        const auto model = induced_model_of_hidden_variable(lambda, bell_scenario());
        const auto ineq = strong_contextuality_inequality(model);
        CHECK(ineq.classical_bound == 4);
        CHECK(inequality_value(ineq, model) == 4);
    }
}

TEST_CASE("plain logical Bell inequalities never beat N-1 when contradictory") {
    // Exhaustive over all 2^16 event selections in the Bell scenario:
    // whenever the per-context selections are jointly unsatisfiable, the
    // weighted independence number stays at most N-1.
    const auto s = bell_scenario();
    const auto g = exclusivity_graph(s);
    long contradictory = 0;
    for (int mask = 0; mask < (1 << 16); ++mask) {
        std::vector<std::vector<long>> selections(4);
        for (int c = 0; c < 4; ++c) {
            for (int r = 0; r < 4; ++r) {
                if ((mask >> (4 * c + r)) & 1)
                    selections[c].push_back(r);
            }
        }
        if (selections_satisfiable(s, selections))
            continue;
        ++contradictory;
        std::vector<Rational> w(16, Rational(0));
        for (int c = 0; c < 4; ++c) {
            for (long r : selections[c])
                w[4 * c + r] = 1;
        }
        const Rational bound = independence_number(g.adjacency, w).value;
        if (bound > 3) {
            CAPTURE(mask);
            REQUIRE(bound <= 3);
        }
    }
    CHECK(contradictory > 0);
}

TEST_CASE("satisfiability matches hidden-variable enumeration") {
    const auto s = bell_scenario();
    std::mt19937 rng(73);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::vector<long>> selections(4);
        std::bernoulli_distribution pick(0.5);
        for (auto& sel : selections) {
            for (long r = 0; r < 4; ++r) {
                if (pick(rng))
                    sel.push_back(r);
            }
        }
        bool by_enumeration = false;
        for (int mask = 0; mask < 16 && !by_enumeration; ++mask) {
            CanonicalHiddenVariable lambda;
            for (int m = 0; m < 4; ++m)
                lambda.outcomes.push_back(static_cast<Outcome>((mask >> m) & 1));
            bool all = true;
            for (int c = 0; c < 4 && all; ++c) {
                const auto e = lambda.restrict_to_context(s, c);
                const long rank = s.rank_outcomes(c, e.outcomes);
                all = std::find(selections[c].begin(), selections[c].end(), rank) !=
                      selections[c].end();
            }
            by_enumeration = all;
        }
        CHECK(selections_satisfiable(s, selections) == by_enumeration);
    }
}

TEST_CASE("Lemma-1 correspondence") {
    const auto s = bell_scenario();
    SUBCASE("all-zero hidden variable maps to the all-zero transversal") {
        CanonicalHiddenVariable lambda{{0, 0, 0, 0}};
        const auto events = independent_set_from_hidden_variable(s, lambda);
        REQUIRE(events.size() == 4);
        for (const auto& e : events)
            CHECK(e.outcomes == std::vector<Outcome>{0, 0});
        CHECK(hidden_variable_from_independent_set(s, events) == lambda);
    }
    SUBCASE("undersized set rejected") {
        CanonicalHiddenVariable lambda{{0, 0, 0, 0}};
        auto events = independent_set_from_hidden_variable(s, lambda);
        events.pop_back();
        CHECK_THROWS_AS(hidden_variable_from_independent_set(s, events), input_error);
    }
    SUBCASE("dependent set rejected") {
        std::vector<ObservableEvent> events{
            {0, {0, 0}}, {1, {1, 1}}, {2, {0, 0}}, {3, {0, 0}}};
        // contexts 0 and 1 share A0 and disagree (0 vs 1)
        CHECK_THROWS_AS(hidden_variable_from_independent_set(s, events), input_error);
    }
    SUBCASE("round-trips on random scenarios") {
        std::mt19937 rng(79);
        for (int trial = 0; trial < 100; ++trial) {
            const auto sc = oracles::random_scenario(rng, 6, 5, 2 + trial % 2);
            const auto lambda = oracles::random_hidden_variable(rng, sc);
            const auto events = independent_set_from_hidden_variable(sc, lambda);
            CHECK(hidden_variable_from_independent_set(sc, events) == lambda);

            // and forward from an independent transversal found by the solver
            const auto supp =
                support_graph(induced_model_of_hidden_variable(lambda, sc));
            const auto alpha = independence_number(supp.adjacency);
            REQUIRE(alpha.value == sc.context_count());
            std::vector<ObservableEvent> witness_events;
            for (int v : alpha.witness)
                witness_events.push_back(supp.events[v]);
            const auto lambda2 = hidden_variable_from_independent_set(sc, witness_events);
            CHECK(independent_set_from_hidden_variable(sc, lambda2).size() ==
                  static_cast<size_t>(sc.context_count()));
        }
    }
}

TEST_CASE("noncontextual fraction") {
    SUBCASE("PR box: 0") {
        CHECK(noncontextual_fraction(catalog_model("pr_box")) == 0);
    }
    SUBCASE("deterministic model: 1") {
        CanonicalHiddenVariable lambda{{1, 0, 0, 1}};
        const auto model = induced_model_of_hidden_variable(lambda, bell_scenario());
        CHECK(noncontextual_fraction(model) == 1);
    }
    SUBCASE("Bell state: strictly between, bounded by the CHSH violation") {
        const Rational tau = noncontextual_fraction(catalog_model("bell_table"));
        CHECK(tau > 0);
        CHECK(tau < 1);
        // 1 - tau >= violation / 1 = 1/4, and the LP meets that bound exactly
        CHECK(Rational(1) - tau >= Rational(1, 4));
        CHECK(tau == Rational(3, 4));
    }
    SUBCASE("cap produces an explicit error") {
        CHECK_THROWS_AS(noncontextual_fraction(catalog_model("pr_box"), 8), cap_error);
    }
}

TEST_CASE("joint-distribution LP") {
    SUBCASE("deterministic model is noncontextual with its own point mass") {
        CanonicalHiddenVariable lambda{{0, 1, 1, 0}};
        const auto model = induced_model_of_hidden_variable(lambda, bell_scenario());
        std::vector<Rational> joint;
        REQUIRE(joint_distribution_exists(model, 1 << 20, &joint));
        Rational total(0);
        for (const auto& p : joint)
            total += p;
        CHECK(total == 1);
    }
    SUBCASE("Bell state has no joint distribution") {
        CHECK_FALSE(joint_distribution_exists(catalog_model("bell_table")));
    }
}

TEST_CASE("LP and graph routes agree on the catalog") {
    // tau = 0 iff Theorem-3 predicate; tau = 1 iff the joint LP is feasible.
    std::vector<EmpiricalModel> models;
    models.push_back(catalog_model("bell_table"));
    models.push_back(catalog_model("pr_box"));
    models.push_back(catalog_model("hardy"));
    CanonicalHiddenVariable lambda{{0, 0, 1, 1}};
    models.push_back(induced_model_of_hidden_variable(lambda, bell_scenario()));

    for (const auto& model : models) {
        const auto supp = support_graph(model);
        const bool thm3 = independence_number(supp.adjacency).value <
                          model.scenario().context_count();
        const Rational tau = noncontextual_fraction(model);
        const bool joint = joint_distribution_exists(model);
        CHECK((tau == 0) == thm3);
        CHECK((tau == 1) == joint);
    }
}

TEST_CASE("classification verdicts") {
    SUBCASE("Hardy: logically but not strongly contextual") {
        const auto report = classify(catalog_model("hardy"));
        CHECK(report.nonsignalling);
        CHECK_FALSE(report.strongly_contextual);
        CHECK(report.logically_contextual);
        REQUIRE(report.minimal_independence.has_value());
        CHECK(*report.minimal_independence == 3);
        CHECK(report.alpha_support == 4);
        CHECK(report.noncontextual == false);
        REQUIRE(report.logical_witness_event.has_value());
        // the witness event forces a contradiction: verify by exhaustive
        // extension over all 16 hidden variables
        const auto& e = *report.logical_witness_event;
        const auto& model = catalog_model("hardy");
        const auto& s = model.scenario();
        for (int mask = 0; mask < 16; ++mask) {
            CanonicalHiddenVariable lambda;
            for (int m = 0; m < 4; ++m)
                lambda.outcomes.push_back(static_cast<Outcome>((mask >> m) & 1));
            const auto at_e = lambda.restrict_to_context(s, e.context);
            if (!(at_e == e))
                continue;
            bool hits_impossible = false;
            for (int c = 0; c < 4; ++c) {
                const auto ec = lambda.restrict_to_context(s, c);
                if (model.probability(ec) == 0)
                    hits_impossible = true;
            }
            CHECK(hits_impossible);
        }
    }
    SUBCASE("PR box: strongly contextual with fraction 0") {
        const auto report = classify(catalog_model("pr_box"));
        CHECK(report.strongly_contextual);
        CHECK(report.logically_contextual);
        CHECK(report.alpha_support == 3);
        CHECK(report.noncontextual == false);
        REQUIRE(report.noncontextual_fraction.has_value());
        CHECK(*report.noncontextual_fraction == 0);
    }
    SUBCASE("Bell state: contextual but not logically contextual") {
        const auto report = classify(catalog_model("bell_table"));
        CHECK_FALSE(report.strongly_contextual);
        CHECK_FALSE(report.logically_contextual);
        REQUIRE(report.minimal_independence.has_value());
        CHECK(*report.minimal_independence == 4);
        CHECK(report.noncontextual == false);  // via the joint LP
        REQUIRE(report.noncontextual_fraction.has_value());
        CHECK(*report.noncontextual_fraction > 0);
        CHECK(*report.noncontextual_fraction < 1);
        // non-strong witness: a global assignment whose restrictions are all
        // possible
        REQUIRE(report.global_assignment.has_value());
        const auto& model = catalog_model("bell_table");
        for (int c = 0; c < 4; ++c) {
            const auto e = report.global_assignment->restrict_to_context(model.scenario(), c);
            CHECK(model.probability(e) > 0);
        }
    }
    SUBCASE("deterministic model: noncontextual") {
        CanonicalHiddenVariable lambda{{1, 1, 0, 0}};
        const auto report =
            classify(induced_model_of_hidden_variable(lambda, bell_scenario()));
        CHECK_FALSE(report.strongly_contextual);
        CHECK_FALSE(report.logically_contextual);
        CHECK(report.noncontextual == true);
        CHECK(*report.noncontextual_fraction == 1);
        CHECK(report.joint_distribution.has_value());
    }
    SUBCASE("signalling model rejected") {
        const auto s = bell_scenario();
        std::vector<std::vector<Rational>> tables(4, std::vector<Rational>(4, Rational(1, 4)));
        tables[0] = {Rational(1), Rational(0), Rational(0), Rational(0)};
        CHECK_THROWS_AS(classify(EmpiricalModel(s, tables)), input_error);
    }
    SUBCASE("hierarchy soundness on the catalog") {
        for (const char* name : {"bell_table", "pr_box", "hardy", "ghz"}) {
            const auto report = classify(catalog_model(name));
            if (report.strongly_contextual)
                CHECK(report.logically_contextual);
            if (report.logically_contextual)
                CHECK(report.noncontextual == false);
        }
    }
    SUBCASE("predicate mode matches the full scan verdict") {
        ClassificationOptions opt;
        opt.full_minimal_independence = false;
        const auto fast = classify(catalog_model("hardy"), opt);
        CHECK(fast.logically_contextual);
        CHECK_FALSE(fast.minimal_independence.has_value());
        REQUIRE(fast.logical_witness_event.has_value());
    }
}

TEST_CASE("GHZ model is strongly contextual") {
    const auto model = catalog_model("ghz");
    CHECK(model.scenario().context_count() == 8);
    CHECK(is_nonsignalling(model).holds);
    const auto report = classify(model);
    CHECK(report.strongly_contextual);
    CHECK(report.alpha_support < 8);
}
