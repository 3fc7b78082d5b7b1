#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ctxkit/catalog.hpp"
#include "ctxkit/errors.hpp"
#include "ctxkit/protocols.hpp"
#include "oracles.hpp"

using namespace ctxkit;

TEST_CASE("induced scenarios") {
    const auto s = bell_scenario();
    SUBCASE("Bell at A0") {
        const auto ind = induced_scenario(s, "A0");
        CHECK(ind.measurements() == std::vector<std::string>{"B0", "B1"});
        CHECK(ind.context_count() == 2);
        CHECK(ind.context_size(0) == 1);
        CHECK(ind.context_size(1) == 1);
    }
    SUBCASE("Bell at B1 by symmetry") {
        const auto ind = induced_scenario(s, "B1");
        CHECK(ind.measurements() == std::vector<std::string>{"A0", "A1"});
        CHECK(ind.context_count() == 2);
    }
    SUBCASE("single context at its only measurement is empty") {
        const auto single = MeasurementScenario::make({"a"}, {{"a"}}, 2);
        const auto ind = induced_scenario(single, "a");
        CHECK(ind.empty());
    }
    SUBCASE("unknown measurement rejected") {
        CHECK_THROWS_AS(induced_scenario(s, "C9"), input_error);
    }
}

TEST_CASE("protocol enumeration") {
    SUBCASE("Bell scenario has 16 protocols") {
        CHECK(count_protocols(bell_scenario()) == 16);
        CHECK(enumerate_protocols(bell_scenario()).size() == 16);
    }
    SUBCASE("empty scenario has one protocol with one outcome") {
        const auto empty = MeasurementScenario::make({}, {}, 2);
        CHECK(count_protocols(empty) == 1);
        const auto protocols = enumerate_protocols(empty);
        REQUIRE(protocols.size() == 1);
        const auto outcomes = protocol_outcomes(empty, protocols[0]);
        CHECK(outcomes.size() == 1);
        CHECK(outcomes[0].path.empty());
    }
    SUBCASE("single binary context: protocols cover all 4 events") {
        const auto s = MeasurementScenario::make({"a", "b"}, {{"a", "b"}}, 2);
        for (const auto& t : enumerate_protocols(s)) {
            const auto outcomes = protocol_outcomes(s, t);
            CHECK(outcomes.size() == 4);
            std::set<long> ranks;
            for (const auto& alpha : outcomes) {
                CHECK(alpha.event.context == 0);
                ranks.insert(s.rank_outcomes(0, alpha.event.outcomes));
            }
            CHECK(ranks.size() == 4);
        }
    }
    SUBCASE("cap refusal names the count") {
        try {
            enumerate_protocols(bell_scenario(), 5);
            FAIL("expected cap_error");
        } catch (const cap_error& e) {
            CHECK(std::string(e.what()).find("16") != std::string::npos);
        }
    }
}

TEST_CASE("every protocol outcome lands on a context") {
    std::mt19937 rng(83);
    for (int trial = 0; trial < 20; ++trial) {
        const auto s = oracles::random_scenario(rng, 3, 3);
        for (const auto& t : enumerate_protocols(s)) {
            for (const auto& alpha : protocol_outcomes(s, t)) {
                CHECK(alpha.event.context >= 0);
                CHECK(alpha.event.context < s.context_count());
            }
        }
    }
}

TEST_CASE("reachability: every event arises from a protocol starting anywhere") {
    // For every measurement A and every event e of a context containing A,
    // some protocol starts with A and realizes e as one of its outcomes.
    std::mt19937 rng(89);
    std::vector<MeasurementScenario> scenarios{bell_scenario()};
    for (int trial = 0; trial < 10; ++trial)
        scenarios.push_back(oracles::random_scenario(rng, 3, 3));

    for (const auto& s : scenarios) {
        const auto protocols = enumerate_protocols(s);
        for (int c = 0; c < s.context_count(); ++c) {
            for (int mi : s.context(c)) {
                const std::string& name = s.measurement_name(mi);
                for (long r = 0; r < s.event_count(c); ++r) {
                    const ObservableEvent target{c, s.unrank_outcomes(c, r)};
                    bool found = false;
                    for (const auto& t : protocols) {
                        if (t->first != name)
                            continue;
                        for (const auto& alpha : protocol_outcomes(s, t)) {
                            if (alpha.event == target)
                                found = true;
                        }
                        if (found)
                            break;
                    }
                    CHECK(found);
                }
            }
        }
    }
}

TEST_CASE("hyperedges are cliques of the exclusivity graph") {
    const auto s = bell_scenario();
    const auto h = contextuality_hypergraph(s);
    const auto ex = exclusivity_graph(s);
    CHECK(h.vertices.size() == 16);
    for (const auto& edge : h.hyperedges) {
        for (size_t i = 0; i < edge.size(); ++i) {
            for (size_t j = i + 1; j < edge.size(); ++j)
                CHECK(ex.adjacency.adjacent(edge[i], edge[j]));
        }
    }
}

TEST_CASE("every vertex lies in at least one hyperedge") {
    std::mt19937 rng(91);
    std::vector<MeasurementScenario> scenarios{bell_scenario()};
    for (int trial = 0; trial < 10; ++trial)
        scenarios.push_back(oracles::random_scenario(rng, 3, 3));
    for (const auto& s : scenarios) {
        const auto h = contextuality_hypergraph(s);
        std::vector<bool> covered(h.vertices.size(), false);
        for (const auto& edge : h.hyperedges) {
            for (int v : edge)
                covered[v] = true;
        }
        CHECK(std::all_of(covered.begin(), covered.end(), [](bool b) { return b; }));
    }
}

TEST_CASE("theorem-4 isomorphism") {
    SUBCASE("Bell scenario") {
        const auto report = verify_theorem4(bell_scenario());
        CHECK(report.isomorphic);
        CHECK(report.protocol_count == 16);
    }
    SUBCASE("single context") {
        const auto s = MeasurementScenario::make({"a", "b"}, {{"a", "b"}}, 2);
        CHECK(verify_theorem4(s).isomorphic);
    }
    SUBCASE("random scenarios with up to 3 measurements") {
        std::mt19937 rng(97);
        for (int trial = 0; trial < 50; ++trial) {
            const auto s = oracles::random_scenario(rng, 3, 3);
            const auto report = verify_theorem4(s);
            CHECK(report.isomorphic);
            CHECK_FALSE(report.counterexample.has_value());
        }
    }
    SUBCASE("a qutrit-outcome scenario") {
        const auto s = MeasurementScenario::make({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}, 3);
        CHECK(verify_theorem4(s).isomorphic);
    }
}
