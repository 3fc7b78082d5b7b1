#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "ctxkit/catalog.hpp"
#include "ctxkit/errors.hpp"
#include "ctxkit/exclusivity.hpp"
#include "ctxkit/graphs.hpp"
#include "ctxkit/logic.hpp"
#include "ctxkit/stabilizer.hpp"

using namespace ctxkit;

namespace {

PhasePoint point(int n, int d, std::vector<int> coords) { return make_point(n, d, coords); }

/// Did the two routes produce the same operator up to a d-th root phase?
bool equal_up_to_root(const CycMatrix& a, const CycMatrix& b, int d, int m, long* phase_out) {
    for (long k = 0; k < d; ++k) {
        const Cyclotomic phase = Cyclotomic::root_power(m, k * (m / d));
        if (a == b.scaled(phase)) {
            if (phase_out != nullptr)
                *phase_out = k;
            return true;
        }
    }
    return false;
}

}  // namespace

TEST_CASE("cyclotomic field arithmetic") {
    SUBCASE("ring axioms for m = 3") {
        const auto w = Cyclotomic::root_power(3, 1);
        const auto w2 = Cyclotomic::root_power(3, 2);
        CHECK(w * w == w2);
        CHECK(w * w2 == Cyclotomic::one(3));
        // 1 + w + w^2 = 0
        CHECK((Cyclotomic::one(3) + w + w2).is_zero());
        CHECK((w + w2).to_rational() == -1);
    }
    SUBCASE("m = 4 houses i") {
        const auto i = Cyclotomic::root_power(4, 1);
        CHECK(i * i == -Cyclotomic::one(4));
        CHECK(i.conj() == -i);
        CHECK((i * i.conj()).to_rational() == 1);
    }
    SUBCASE("conjugation is an involution and fixes rationals") {
        const auto z = Cyclotomic::root_power(5, 2) * Rational(3, 7) +
                       Cyclotomic::root_power(5, 1) - Cyclotomic::one(5) * Rational(2);
        CHECK(z.conj().conj() == z);
        CHECK(Cyclotomic(5, Rational(9, 4)).conj() == Cyclotomic(5, Rational(9, 4)));
        // z * conj(z) is real: for the quadratic fields it must be rational
        const auto q = Cyclotomic::root_power(3, 1) * Rational(1, 2) + Cyclotomic::one(3);
        CHECK((q * q.conj()).is_rational());
    }
    SUBCASE("rationality detection") {
        CHECK(Cyclotomic::one(3).is_rational());
        CHECK_FALSE(Cyclotomic::root_power(3, 1).is_rational());
        CHECK_THROWS_AS(Cyclotomic::root_power(3, 1).to_rational(), input_error);
    }
    SUBCASE("mixing conductors throws") {
        CHECK_THROWS_AS(Cyclotomic::one(3) + Cyclotomic::one(4), input_error);
    }
}

TEST_CASE("Weyl relations hold exactly") {
    for (const auto& [n, d] : std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 2}, {2, 3}}) {
        const int m = natural_conductor(d);
        long dim = 1;
        for (int i = 0; i < n; ++i)
            dim *= d;
        const CycMatrix id = CycMatrix::identity(static_cast<int>(dim), m);
        long points = 1;
        for (int i = 0; i < 2 * n; ++i)
            points *= d;

        std::vector<PhasePoint> all;
        for (long idx = 0; idx < points; ++idx) {
            std::vector<int> coords(2 * n);
            long r = idx;
            for (int i = 2 * n - 1; i >= 0; --i) {
                coords[i] = static_cast<int>(r % d);
                r /= d;
            }
            all.push_back(point(n, d, coords));
        }
        for (const auto& a : all) {
            const CycMatrix wa = weyl_operator(a);
            // W(a) W(a)^dagger = I and W(a)^d = I
            CHECK(wa * wa.dagger() == id);
            CycMatrix power = wa;
            for (int k = 1; k < d; ++k)
                power = power * wa;
            CHECK(power == id);
            for (const auto& b : all) {
                const CycMatrix wb = weyl_operator(b);
                const CycMatrix ab = wa * wb;
                // commutation iff symplectic product vanishes
                const bool commute = ab == wb * wa;
                CHECK(commute == (symplectic_product(a, b) == 0));
                // W(a) W(b) is W(a+b) up to a d-th root of unity (times i
                // for qubits); for odd d on isotropic pairs the phase is
                // fixed by the convention: w^((1/2)[a,b])
                const CycMatrix wab = weyl_operator(add_points(a, b));
                if (d != 2) {
                    long phase = -1;
                    CHECK(equal_up_to_root(ab, wab, d, m, &phase));
                    if (symplectic_product(a, b) == 0)
                        CHECK(phase == 0);
                }
            }
        }
    }
}

TEST_CASE("Lagrangian subspace enumeration") {
    SUBCASE("one qutrit: the 4 lines of Z_3^2") {
        CHECK(enumerate_lagrangians(1, 3).size() == 4);
    }
    SUBCASE("two qutrits: 40 subspaces") {
        CHECK(enumerate_lagrangians(2, 3).size() == 40);
    }
    SUBCASE("two qubits: 15 subspaces") {
        CHECK(enumerate_lagrangians(2, 2).size() == 15);
    }
    SUBCASE("one qubit: 3 subspaces") {
        CHECK(enumerate_lagrangians(1, 2).size() == 3);
    }
    SUBCASE("counts match prod (d^i + 1)") {
        // three qubits: 3 * 5 * 9 = 135
        CHECK(enumerate_lagrangians(3, 2).size() == 135);
    }
    SUBCASE("nonprime arity rejected") {
        CHECK_THROWS_AS(enumerate_lagrangians(1, 4), input_error);
        CHECK_THROWS_AS(enumerate_lagrangians(1, 6), input_error);
    }
    SUBCASE("cap error") {
        CHECK_THROWS_AS(enumerate_lagrangians(8, 3, 100), cap_error);
    }
    SUBCASE("every subspace is isotropic with d^n points") {
        for (const auto& sub : enumerate_lagrangians(2, 3)) {
            const auto pts = sub.points();
            CHECK(pts.size() == 9);
            for (const auto& a : pts) {
                for (const auto& b : pts)
                    CHECK(symplectic_product(a, b) == 0);
            }
        }
    }
}

TEST_CASE("stabilizer projectors") {
    SUBCASE("single-qubit Z axis anchors the convention: v = 0 gives |0><0|") {
        LagrangianSubspace z_axis = lagrangian_from_basis(1, 2, {point(1, 2, {1, 0})});
        const CycMatrix p = stabilizer_projector(z_axis, point(1, 2, {0, 0}));
        CHECK(p.at(0, 0).to_rational() == 1);
        CHECK(p.at(0, 1).is_zero());
        CHECK(p.at(1, 0).is_zero());
        CHECK(p.at(1, 1).is_zero());
    }
    SUBCASE("hermitian, idempotent, trace one; completeness per subspace") {
        for (const auto& [n, d] : std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 2}}) {
            const int m = natural_conductor(d);
            long dim = 1;
            for (int i = 0; i < n; ++i)
                dim *= d;
            long points = 1;
            for (int i = 0; i < 2 * n; ++i)
                points *= d;
            const auto subs = enumerate_lagrangians(n, d);
            for (const auto& sub : subs) {
                CycMatrix sum(static_cast<int>(dim), static_cast<int>(dim), m);
                std::vector<CycMatrix> distinct;
                for (long idx = 0; idx < points; ++idx) {
                    std::vector<int> coords(2 * n);
                    long r = idx;
                    for (int i = 2 * n - 1; i >= 0; --i) {
                        coords[i] = static_cast<int>(r % d);
                        r /= d;
                    }
                    const auto v = point(n, d, coords);
                    const CycMatrix p = stabilizer_projector(sub, v);
                    CHECK(p == p.dagger());
                    CHECK(p * p == p);
                    CHECK(p.trace().to_rational() == 1);
                    if (std::find(distinct.begin(), distinct.end(), p) == distinct.end()) {
                        distinct.push_back(p);
                        sum = sum + p;
                    }
                }
                // the d^n distinct (M, v) projectors resolve the identity
                CHECK(static_cast<long>(distinct.size()) == dim);
                CHECK(sum == CycMatrix::identity(static_cast<int>(dim), m));
            }
        }
    }
}

TEST_CASE("two-qubit stabilizer scenario counts") {
    const auto ss = stabilizer_scenario(2, 2);
    CHECK(ss.scenario.measurement_count() == 15);
    CHECK(ss.scenario.context_count() == 15);
    CHECK(ss.scenario.total_event_count() == 120);
    for (int c = 0; c < 15; ++c)
        CHECK(ss.scenario.context_size(c) == 3);

    // quantum-possible events: 4 per context, 60 in all, each trace-1
    long possible = 0;
    for (int c = 0; c < 15; ++c) {
        const auto states = context_states(ss, c);
        possible += static_cast<long>(states.projectors.size());
    }
    CHECK(possible == 60);
}

TEST_CASE("two-qutrit stabilizer scenario counts") {
    const auto ss = stabilizer_scenario(2, 3);
    CHECK(ss.scenario.context_count() == 40);
    CHECK(ss.scenario.measurement_count() == 40);
    for (int c = 0; c < 40; ++c)
        CHECK(ss.scenario.context_size(c) == 4);
    CHECK(ss.scenario.total_event_count() == 40 * 81);
}

TEST_CASE("maximally mixed two-qubit model") {
    const auto ss = stabilizer_scenario(2, 2);
    const auto model = quantum_empirical_model(ss, maximally_mixed_state(2, 2));
    CHECK(is_nonsignalling(model).holds);
    // support = the 60 quantum-possible events, each with probability 1/4
    long support = 0;
    for (int c = 0; c < 15; ++c) {
        for (long r = 0; r < 8; ++r) {
            const Rational& p = model.probability(c, r);
            if (p != 0) {
                CHECK(p == Rational(1, 4));
                ++support;
            }
        }
    }
    CHECK(support == 60);
}

TEST_CASE("|00> two-qubit model is nonsignalling with possible support") {
    const auto ss = stabilizer_scenario(2, 2);
    const auto model = quantum_empirical_model(ss, basis_state(4, 0, 4));
    CHECK(is_nonsignalling(model).holds);
    long support = 0;
    for (int c = 0; c < 15; ++c) {
        for (long r = 0; r < 8; ++r) {
            if (model.probability(c, r) != 0)
                ++support;
        }
    }
    CHECK(support <= 60);
    CHECK(support >= 15);
}

TEST_CASE("two-qutrit projector overlaps fall into the four trace classes") {
    // Pairwise traces tr(P1 P2) over all 360 projectors: 1 (equal), 0
    // (orthogonal), 1/3 or 1/9. For rank-one projectors the trace is
    // |<c1|c2>|^2 / (|c1|^2 |c2|^2) over any nonzero columns.
    const auto ss = stabilizer_scenario(2, 3);
    std::vector<CycVector> columns;
    std::vector<Rational> norms;
    for (int c = 0; c < ss.scenario.context_count(); ++c) {
        const auto states = context_states(ss, c);
        for (const auto& col : states.state_columns) {
            columns.push_back(col);
            norms.push_back(inner_product(col, col).to_rational());
        }
    }
    REQUIRE(columns.size() == 360);
    long equal = 0, orthogonal = 0, third = 0, ninth = 0;
    for (size_t i = 0; i < columns.size(); ++i) {
        for (size_t j = i + 1; j < columns.size(); ++j) {
            const Cyclotomic overlap = inner_product(columns[i], columns[j]);
            const Rational trace =
                (overlap * overlap.conj()).to_rational() / (norms[i] * norms[j]);
            if (trace == 1)
                ++equal;
            else if (trace == 0)
                ++orthogonal;
            else if (trace == Rational(1, 3))
                ++third;
            else if (trace == Rational(1, 9))
                ++ninth;
            else
                FAIL("unexpected overlap trace ", format_rational(trace));
        }
    }
    CHECK(equal + orthogonal + third + ninth == 360 * 359 / 2);
    // each stabilizer state belongs to exactly one context, so no repeats
    CHECK(equal == 0);
    CHECK(orthogonal > 0);
    CHECK(third > 0);
    CHECK(ninth > 0);
}

TEST_CASE("orthogonality agrees with exclusivity adjacency") {
    // Restricted to the quantum-possible events, two events are exclusive
    // exactly when their stabilizer projectors are orthogonal.
    for (const auto& [n, d] : std::vector<std::pair<int, int>>{{2, 2}, {1, 3}, {2, 3}}) {
        const auto ss = stabilizer_scenario(n, d);
        const auto full = exclusivity_graph(ss.scenario);
        std::vector<long> offset(ss.scenario.context_count() + 1, 0);
        for (int c = 0; c < ss.scenario.context_count(); ++c)
            offset[c + 1] = offset[c] + ss.scenario.event_count(c);

        struct Possible {
            int vertex;
            CycVector column;
        };
        std::vector<Possible> possible;
        for (int c = 0; c < ss.scenario.context_count(); ++c) {
            const auto states = context_states(ss, c);
            for (size_t i = 0; i < states.projectors.size(); ++i) {
                const long rank = ss.scenario.rank_outcomes(c, states.outcome_tuples[i]);
                possible.push_back(
                    Possible{static_cast<int>(offset[c] + rank), states.state_columns[i]});
            }
        }
        for (size_t i = 0; i < possible.size(); ++i) {
            for (size_t j = i + 1; j < possible.size(); ++j) {
                const bool orthogonal =
                    inner_product(possible[i].column, possible[j].column).is_zero();
                const bool same = possible[i].vertex == possible[j].vertex;
                if (same)
                    continue;
                CHECK(full.adjacency.adjacent(possible[i].vertex, possible[j].vertex) ==
                      orthogonal);
            }
        }
    }
}

TEST_CASE("stabilizer tables agree with the generic operator route") {
    // Independent cross-check of the (M, v) construction: rebuild the tables
    // from eigenprojectors of the canonical Weyl words.
    SUBCASE("two qubits, |00>") {
        const auto ss = stabilizer_scenario(2, 2);
        const auto psi = basis_state(4, 0, 4);
        const auto fast = quantum_empirical_model(ss, psi);
        std::vector<CycMatrix> ops;
        for (int i = 0; i < ss.scenario.measurement_count(); ++i)
            ops.push_back(weyl_operator(ss.labels[i].point));
        const auto slow = quantum_model_from_operators(ss.scenario, ops,
                                                       StateMixture{{Rational(1), psi}});
        CHECK(fast == slow);
    }
    SUBCASE("one qutrit, a superposition state") {
        const auto ss = stabilizer_scenario(1, 3);
        StateVector psi;
        psi.conductor = 3;
        psi.amplitudes = {Cyclotomic::one(3), Cyclotomic::root_power(3, 1),
                          Cyclotomic::zero(3)};
        const auto fast = quantum_empirical_model(ss, psi);
        std::vector<CycMatrix> ops;
        for (int i = 0; i < ss.scenario.measurement_count(); ++i)
            ops.push_back(weyl_operator(ss.labels[i].point));
        const auto slow = quantum_model_from_operators(ss.scenario, ops,
                                                       StateMixture{{Rational(1), psi}});
        CHECK(fast == slow);
    }
}

TEST_CASE("CS state amplitudes and support graph basics") {
    const auto psi = catalog_state("cs_state");
    CHECK(psi.conductor == 3);
    REQUIRE(psi.amplitudes.size() == 9);
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k)
            CHECK(psi.amplitudes[3 * j + k] == Cyclotomic::root_power(3, j * k * k));
    }
    // norm^2 = 9
    CHECK(inner_product(psi.amplitudes, psi.amplitudes).to_rational() == 9);
}

TEST_CASE("Peres-Mermin square") {
    SUBCASE("n = 2") {
        const auto report = mermin_square_check(2);
        CHECK(report.lines_commute);
        CHECK(report.row_signs == std::array<int, 3>{1, 1, 1});
        CHECK(report.column_signs == std::array<int, 3>{1, 1, -1});
        CHECK(report.one_minus_sign);
        CHECK_FALSE(report.valuation_exists);
        CHECK(report.valuations_tried == 512);
        CHECK(report.passed());
    }
    SUBCASE("n = 3 after tensoring with I") {
        const auto report = mermin_square_check(3);
        CHECK(report.lines_commute);
        CHECK(report.one_minus_sign);
        CHECK_FALSE(report.valuation_exists);
        CHECK(report.passed());
    }
    SUBCASE("n = 1 rejected") {
        CHECK_THROWS_AS(mermin_square_check(1), input_error);
    }
    SUBCASE("all-plus control admits the trivial valuation") {
        const auto v = find_multiplicative_valuation({1, 1, 1, 1, 1, 1});
        REQUIRE(v.has_value());
        CHECK(std::all_of(v->begin(), v->end(), [](int x) { return x == 1; }));
    }
}

TEST_CASE("amplitude files") {
    SUBCASE("round trip") {
        const auto psi = catalog_state("cs_state");
        std::ostringstream out;
        write_amplitude_file(psi, out);
        std::istringstream in(out.str());
        const auto back = parse_amplitude_file(in);
        CHECK(back.conductor == psi.conductor);
        CHECK(back.amplitudes == psi.amplitudes);
    }
    SUBCASE("header example") {
        std::istringstream in("cyclotomic m=3 dim=9\n0: 1\n4: 0,1\n8: 0,0,1\n");
        const auto psi = parse_amplitude_file(in);
        CHECK(psi.amplitudes[0] == Cyclotomic::one(3));
        CHECK(psi.amplitudes[4] == Cyclotomic::root_power(3, 1));
        CHECK(psi.amplitudes[8] == Cyclotomic::root_power(3, 2));
        CHECK(psi.amplitudes[1].is_zero());
    }
    SUBCASE("malformed input rejected") {
        std::istringstream no_header("0: 1\n");
        CHECK_THROWS_AS(parse_amplitude_file(no_header), input_error);
        std::istringstream bad_index("cyclotomic m=3 dim=4\n9: 1\n");
        CHECK_THROWS_AS(parse_amplitude_file(bad_index), input_error);
        std::istringstream zero("cyclotomic m=3 dim=2\n0: 0\n");
        CHECK_THROWS_AS(parse_amplitude_file(zero), input_error);
        std::istringstream too_many("cyclotomic m=3 dim=2\n0: 1,1,1,1\n");
        CHECK_THROWS_AS(parse_amplitude_file(too_many), input_error);
    }
    SUBCASE("zero state rejected by the backend") {
        const auto ss = stabilizer_scenario(1, 2);
        StateVector zero;
        zero.conductor = 4;
        zero.amplitudes.assign(2, Cyclotomic::zero(4));
        CHECK_THROWS_AS(quantum_empirical_model(ss, zero), input_error);
    }
}

TEST_CASE("catalog names") {
    CHECK(is_catalog_model("pr_box"));
    CHECK(is_catalog_state("cs_state"));
    CHECK_FALSE(is_catalog_model("nope"));
    CHECK_THROWS_AS(catalog_model("nope"), input_error);
    CHECK_THROWS_AS(catalog_state("nope"), input_error);
}

TEST_CASE("catalog file: names load amplitude files") {
    {
        std::ofstream out("/tmp/ctxkit_catalog_state.amp");
        write_amplitude_file(catalog_state("cs_state"), out);
    }
    const auto psi = catalog_state("file:/tmp/ctxkit_catalog_state.amp");
    CHECK(psi.amplitudes == catalog_state("cs_state").amplitudes);
    CHECK_THROWS_AS(catalog_state("file:/nonexistent.amp"), input_error);
}
