#include "ctxkit/stabilizer.hpp"

#include <algorithm>
#include <map>

#include "ctxkit/errors.hpp"

namespace ctxkit {

namespace {

int inverse_of_two(int d) {
    for (int x = 1; x < d; ++x) {
        if (2 * x % d == 1)
            return x;
    }
    throw input_error("2 has no inverse mod " + std::to_string(d));
}

int resolve_conductor(int d, int conductor) {
    const int natural = natural_conductor(d);
    if (conductor == 0)
        return natural;
    if (conductor % natural != 0)
        throw input_error("conductor " + std::to_string(conductor) +
                          " cannot represent arity-" + std::to_string(d) + " phases (needs a "
                          "multiple of " + std::to_string(natural) + ")");
    return conductor;
}

/// w_d as an element of Q(w_m), m a multiple of d.
Cyclotomic root_of_arity(int d, int m, long power) {
    return Cyclotomic::root_power(m, power * (m / d));
}

/// Single-qudit Weyl factor for (p, q).
CycMatrix weyl_factor(int d, int p, int q, int m) {
    CycMatrix w(d, d, m);
    if (d == 2) {
        // i^(pq) X^q Z^p, the Hermitian words I, X, Z, Y = iXZ.
        for (int col = 0; col < 2; ++col) {
            const int row = (col + q) % 2;
            Cyclotomic phase = Cyclotomic::root_power(m, (m / 4) * (p * q));  // i^(pq)
            if (p == 1 && col == 1)
                phase = -phase;
            w.at(row, col) = phase;
        }
        return w;
    }
    const int half = inverse_of_two(d);
    for (int col = 0; col < d; ++col) {
        const int row = (col + q) % d;
        // w^(-(1/2) p q) * w^(p * (col + q)) from Z^p acting after X^q
        const long exponent = (-(static_cast<long>(half) * p * q) + static_cast<long>(p) * row);
        w.at(row, col) = root_of_arity(d, m, exponent);
    }
    return w;
}

}  // namespace

int natural_conductor(int d) {
    return d == 2 ? 4 : d;
}

CycMatrix weyl_operator(const PhasePoint& a, int conductor) {
    const int m = resolve_conductor(a.d, conductor);
    CycMatrix w = weyl_factor(a.d, a.p(0), a.q(0), m);
    for (int i = 1; i < a.qudits; ++i)
        w = w.kron(weyl_factor(a.d, a.p(i), a.q(i), m));
    return w;
}

CycMatrix stabilizer_projector(const LagrangianSubspace& sub, const PhasePoint& v,
                               int conductor) {
    const int d = sub.d;
    const int m = resolve_conductor(d, conductor);
    const int dim_exp = sub.qudits;
    long dim = 1;
    for (int i = 0; i < dim_exp; ++i)
        dim *= d;

    if (d != 2) {
        // (1/d^n) sum_{a in M} w^([v,a]) W(a); the Weyl map is a genuine
        // homomorphism on the isotropic subspace, so the character sum is a
        // rank-one projector.
        CycMatrix p(static_cast<int>(dim), static_cast<int>(dim), m);
        for (const PhasePoint& a : sub.points())
            p = p + weyl_operator(a, m).scaled(root_of_arity(d, m, symplectic_product(v, a)));
        return p.scaled(Rational(1, dim));
    }
    // Qubits: product of generator eigenprojectors over the canonical basis,
    // with signs (-1)^([v, b_i]). Basis-sign cocycles make the character sum
    // above unusable here.
    CycMatrix p = CycMatrix::identity(static_cast<int>(dim), m);
    const CycMatrix id = CycMatrix::identity(static_cast<int>(dim), m);
    for (const PhasePoint& b : sub.basis) {
        CycMatrix w = weyl_operator(b, m);
        if (symplectic_product(v, b) % 2 == 1)
            w = id - w;
        else
            w = id + w;
        p = p * w.scaled(Rational(1, 2));
    }
    return p;
}

StateVector basis_state(int dimension, int index, int conductor) {
    if (index < 0 || index >= dimension)
        throw input_error("basis state index out of range");
    StateVector psi;
    psi.conductor = conductor;
    psi.amplitudes.assign(dimension, Cyclotomic::zero(conductor));
    psi.amplitudes[index] = Cyclotomic::one(conductor);
    return psi;
}

StateMixture maximally_mixed_state(int qudits, int d) {
    long dim = 1;
    for (int i = 0; i < qudits; ++i)
        dim *= d;
    StateMixture rho;
    for (long j = 0; j < dim; ++j)
        rho.emplace_back(Rational(1, dim),
                         basis_state(static_cast<int>(dim), static_cast<int>(j),
                                     natural_conductor(d)));
    return rho;
}

StabilizerScenario stabilizer_scenario(int qudits, int d, long point_cap) {
    StabilizerScenario ss;
    ss.qudits = qudits;
    ss.d = d;
    ss.context_subspaces = enumerate_lagrangians(qudits, d, point_cap);

    // Measurements: canonical labels of all nonzero points, sorted.
    std::map<PauliLabel, int> label_index;
    std::vector<PauliLabel> labels;
    for (const auto& sub : ss.context_subspaces) {
        for (const PhasePoint& a : sub.points()) {
            if (a.is_zero())
                continue;
            PauliLabel l = canonical_label(a);
            label_index.emplace(l, 0);
        }
    }
    int next = 0;
    for (auto& [label, idx] : label_index) {
        idx = next++;
        labels.push_back(label);
    }

    std::vector<std::string> names;
    names.reserve(labels.size());
    for (const auto& l : labels)
        names.push_back(label_name(l));

    std::vector<std::vector<int>> contexts;
    for (const auto& sub : ss.context_subspaces) {
        std::vector<int> ctx;
        for (const PhasePoint& a : sub.points()) {
            if (a.is_zero())
                continue;
            const int idx = label_index.at(canonical_label(a));
            if (std::find(ctx.begin(), ctx.end(), idx) == ctx.end())
                ctx.push_back(idx);
        }
        std::sort(ctx.begin(), ctx.end());
        contexts.push_back(std::move(ctx));
    }

    ss.labels = std::move(labels);
    ss.scenario = MeasurementScenario::make_indexed(std::move(names), std::move(contexts), d);
    return ss;
}

namespace {

/// Outcome of the canonical measurement `a` on an eigenstate column:
/// the k with W(a) col = w^k col. Division-free exact comparison.
Outcome eigen_outcome(const CycMatrix& weyl, const CycVector& column, int d, int m) {
    const CycVector image = apply(weyl, column);
    for (int k = 0; k < d; ++k) {
        const Cyclotomic phase = root_of_arity(d, m, k);
        bool match = true;
        for (size_t i = 0; i < column.size() && match; ++i)
            match = image[i] == column[i] * phase;
        if (match)
            return static_cast<Outcome>(k);
    }
    throw std::logic_error("column is not an eigenvector of the canonical Pauli");
}

CycVector nonzero_column(const CycMatrix& p) {
    for (int c = 0; c < p.cols(); ++c) {
        for (int r = 0; r < p.rows(); ++r) {
            if (!p.at(r, c).is_zero()) {
                CycVector col(p.rows(), Cyclotomic::zero(p.conductor()));
                for (int i = 0; i < p.rows(); ++i)
                    col[i] = p.at(i, c);
                return col;
            }
        }
    }
    throw std::logic_error("projector is zero");
}

}  // namespace

ContextStabilizerStates context_states(const StabilizerScenario& ss, int context, int conductor) {
    const int d = ss.d;
    const int m = resolve_conductor(d, conductor);
    const LagrangianSubspace& sub = ss.context_subspaces.at(context);
    const auto& ctx = ss.scenario.context(context);

    // Canonical Weyl operator per measurement of the context.
    std::vector<CycMatrix> canonical;
    canonical.reserve(ctx.size());
    for (int mi : ctx)
        canonical.push_back(weyl_operator(ss.labels[mi].point, m));

    ContextStabilizerStates out;
    std::map<std::vector<Outcome>, bool> seen;

    // Enumerate phase points; distinct (M, v) projectors are distinguished by
    // their outcome tuples, d^n of them per context.
    long total_points = 1;
    for (int i = 0; i < 2 * ss.qudits; ++i)
        total_points *= d;
    long expected = 1;
    for (int i = 0; i < ss.qudits; ++i)
        expected *= d;

    for (long idx = 0; idx < total_points && static_cast<long>(out.projectors.size()) < expected;
         ++idx) {
        std::vector<int> coords(2 * ss.qudits);
        long r = idx;
        for (int i = 2 * ss.qudits - 1; i >= 0; --i) {
            coords[i] = static_cast<int>(r % d);
            r /= d;
        }
        const PhasePoint v = make_point(ss.qudits, d, coords);
        if (d != 2) {
            // W(b) P_{M,v} = w^(-[v,b]) P_{M,v}, so the outcome tuple is known
            // before building the projector; skip repeats cheaply. The
            // eigenvalue check below still re-derives it from the matrix.
            std::vector<Outcome> predicted;
            predicted.reserve(ctx.size());
            for (size_t i = 0; i < ctx.size(); ++i) {
                const int s = symplectic_product(v, ss.labels[ctx[i]].point);
                predicted.push_back(static_cast<Outcome>((d - s) % d));
            }
            if (seen.count(predicted))
                continue;
        }
        CycMatrix p = stabilizer_projector(sub, v, m);
        CycVector col = nonzero_column(p);
        std::vector<Outcome> tuple;
        tuple.reserve(ctx.size());
        for (size_t i = 0; i < ctx.size(); ++i)
            tuple.push_back(eigen_outcome(canonical[i], col, d, m));
        if (seen.emplace(tuple, true).second) {
            out.outcome_tuples.push_back(std::move(tuple));
            out.projectors.push_back(std::move(p));
            out.state_columns.push_back(std::move(col));
        }
    }
    if (static_cast<long>(out.projectors.size()) != expected)
        throw std::logic_error("context realizes " + std::to_string(out.projectors.size()) +
                               " states, expected " + std::to_string(expected));
    return out;
}

namespace {

Rational born_probability(const CycMatrix& projector, const StateMixture& rho,
                          const std::vector<Rational>& inverse_norms) {
    Rational prob(0);
    for (size_t k = 0; k < rho.size(); ++k) {
        const auto& [w, psi] = rho[k];
        const Cyclotomic overlap = inner_product(psi.amplitudes, apply(projector, psi.amplitudes));
        prob += w * overlap.to_rational() * inverse_norms[k];
    }
    return prob;
}

std::vector<Rational> mixture_inverse_norms(const StateMixture& rho) {
    std::vector<Rational> inv;
    inv.reserve(rho.size());
    for (const auto& [w, psi] : rho) {
        const Cyclotomic norm = inner_product(psi.amplitudes, psi.amplitudes);
        if (norm.is_zero())
            throw input_error("state vector is zero");
        const Rational n = norm.to_rational();
        Rational reciprocal(n.get_den(), n.get_num());
        reciprocal.canonicalize();
        inv.push_back(std::move(reciprocal));
    }
    return inv;
}

void validate_mixture(const StateMixture& rho, long dim) {
    if (rho.empty())
        throw input_error("empty state mixture");
    Rational total(0);
    const int m = rho.front().second.conductor;
    for (const auto& [w, psi] : rho) {
        if (w < 0)
            throw input_error("negative mixture weight");
        if (psi.conductor != m)
            throw input_error("mixture components use different conductors");
        if (static_cast<long>(psi.amplitudes.size()) != dim)
            throw input_error("state vector has dimension " +
                              std::to_string(psi.amplitudes.size()) + ", scenario needs " +
                              std::to_string(dim));
        total += w;
    }
    if (total != 1)
        throw input_error("mixture weights sum to " + format_rational(total) + ", not 1");
}

}  // namespace

EmpiricalModel quantum_empirical_model(const StabilizerScenario& ss, const StateMixture& rho) {
    long dim = 1;
    for (int i = 0; i < ss.qudits; ++i)
        dim *= ss.d;
    validate_mixture(rho, dim);
    const int m = resolve_conductor(ss.d, rho.front().second.conductor);
    const auto inverse_norms = mixture_inverse_norms(rho);

    std::vector<std::vector<Rational>> tables;
    tables.reserve(ss.scenario.context_count());
    for (int c = 0; c < ss.scenario.context_count(); ++c) {
        std::vector<Rational> table(ss.scenario.event_count(c), Rational(0));
        const ContextStabilizerStates states = context_states(ss, c, m);
        for (size_t i = 0; i < states.projectors.size(); ++i) {
            const long rank = ss.scenario.rank_outcomes(c, states.outcome_tuples[i]);
            table[rank] = born_probability(states.projectors[i], rho, inverse_norms);
        }
        tables.push_back(std::move(table));
    }
    return EmpiricalModel(ss.scenario, std::move(tables));
}

EmpiricalModel quantum_empirical_model(const StabilizerScenario& ss, const StateVector& psi) {
    return quantum_empirical_model(ss, StateMixture{{Rational(1), psi}});
}

EmpiricalModel quantum_model_from_operators(const MeasurementScenario& s,
                                            const std::vector<CycMatrix>& measurement_operators,
                                            const StateMixture& rho) {
    if (static_cast<int>(measurement_operators.size()) != s.measurement_count())
        throw input_error("need one operator per measurement");
    if (rho.empty())
        throw input_error("empty state mixture");
    const long dim = rho.front().second.amplitudes.size();
    validate_mixture(rho, dim);
    const int m = rho.front().second.conductor;
    const int d = s.outcome_arity();
    const auto inverse_norms = mixture_inverse_norms(rho);
    const CycMatrix id = CycMatrix::identity(static_cast<int>(dim), m);

    // Eigenprojectors (1/d) sum_k w^(-ok) U^k per measurement and outcome.
    std::vector<std::vector<CycMatrix>> eigen(s.measurement_count());
    for (int mi = 0; mi < s.measurement_count(); ++mi) {
        std::vector<CycMatrix> powers{id};
        for (int k = 1; k < d; ++k)
            powers.push_back(powers.back() * measurement_operators[mi]);
        if (!((powers.back() * measurement_operators[mi]) == id))
            throw input_error("measurement operator is not a d-th root of the identity");
        for (int o = 0; o < d; ++o) {
            CycMatrix proj(static_cast<int>(dim), static_cast<int>(dim), m);
            for (int k = 0; k < d; ++k)
                proj = proj + powers[k].scaled(root_of_arity(d, m, -static_cast<long>(o) * k));
            eigen[mi].push_back(proj.scaled(Rational(1, d)));
        }
    }

    std::vector<std::vector<Rational>> tables;
    for (int c = 0; c < s.context_count(); ++c) {
        const auto& ctx = s.context(c);
        std::vector<Rational> table(s.event_count(c), Rational(0));
        for (long r = 0; r < s.event_count(c); ++r) {
            const auto outcomes = s.unrank_outcomes(c, r);
            CycMatrix p = eigen[ctx[0]][outcomes[0]];
            for (size_t i = 1; i < ctx.size(); ++i)
                p = p * eigen[ctx[i]][outcomes[i]];
            table[r] = born_probability(p, rho, inverse_norms);
        }
        tables.push_back(std::move(table));
    }
    return EmpiricalModel(s, std::move(tables));
}

// --- Peres-Mermin -----------------------------------------------------------

std::optional<std::array<int, 9>> find_multiplicative_valuation(
    const std::array<int, 6>& line_signs) {
    static constexpr std::array<std::array<int, 3>, 6> lines{{
        {0, 1, 2}, {3, 4, 5}, {6, 7, 8},  // rows
        {0, 3, 6}, {1, 4, 7}, {2, 5, 8},  // columns
    }};
    for (int mask = 0; mask < (1 << 9); ++mask) {
        std::array<int, 9> v;
        for (int i = 0; i < 9; ++i)
            v[i] = (mask >> i) & 1 ? -1 : 1;
        bool ok = true;
        for (int l = 0; l < 6 && ok; ++l) {
            int prod = 1;
            for (int cell : lines[l])
                prod *= v[cell];
            ok = prod == line_signs[l];
        }
        if (ok)
            return v;
    }
    return std::nullopt;
}

MerminReport mermin_square_check(int qubits) {
    if (qubits < 2)
        throw input_error("the Peres-Mermin square needs at least 2 qubits");
    const int m = 4;
    CycMatrix I = CycMatrix::identity(2, m);
    CycMatrix X(2, 2, m), Y(2, 2, m), Z(2, 2, m);
    X.at(0, 1) = Cyclotomic::one(m);
    X.at(1, 0) = Cyclotomic::one(m);
    Y.at(0, 1) = -Cyclotomic::root_power(m, 1);  // -i
    Y.at(1, 0) = Cyclotomic::root_power(m, 1);   //  i
    Z.at(0, 0) = Cyclotomic::one(m);
    Z.at(1, 1) = -Cyclotomic::one(m);

    auto pair = [&](const CycMatrix& a, const CycMatrix& b) {
        CycMatrix r = a.kron(b);
        for (int extra = 2; extra < qubits; ++extra)
            r = r.kron(I);
        return r;
    };
    // Rows commute and multiply to +1; the third column carries the -1.
    const std::array<CycMatrix, 9> table{
        pair(Z, I), pair(I, Z), pair(Z, Z),
        pair(I, X), pair(X, I), pair(X, X),
        pair(Z, X), pair(X, Z), pair(Y, Y),
    };

    MerminReport report;
    report.qubits = qubits;

    static constexpr std::array<std::array<int, 3>, 6> lines{{
        {0, 1, 2}, {3, 4, 5}, {6, 7, 8},
        {0, 3, 6}, {1, 4, 7}, {2, 5, 8},
    }};
    long dim = 1;
    for (int i = 0; i < qubits; ++i)
        dim *= 2;
    const CycMatrix id = CycMatrix::identity(static_cast<int>(dim), m);

    report.lines_commute = true;
    std::array<int, 6> signs{};
    for (int l = 0; l < 6; ++l) {
        const auto& cells = lines[l];
        for (int i = 0; i < 3; ++i) {
            for (int j = i + 1; j < 3; ++j) {
                if (!(table[cells[i]] * table[cells[j]] == table[cells[j]] * table[cells[i]]))
                    report.lines_commute = false;
            }
        }
        const CycMatrix prod = table[cells[0]] * table[cells[1]] * table[cells[2]];
        if (prod == id) {
            signs[l] = 1;
        } else if (prod == id.scaled(Rational(-1))) {
            signs[l] = -1;
        } else {
            throw std::logic_error("line product is not +-identity");
        }
    }
    report.row_signs = {signs[0], signs[1], signs[2]};
    report.column_signs = {signs[3], signs[4], signs[5]};
    report.one_minus_sign = std::count(signs.begin(), signs.end(), -1) == 1;

    const auto valuation = find_multiplicative_valuation(signs);
    report.valuation_exists = valuation.has_value();
    report.valuations_tried = 1 << 9;
    return report;
}

}  // namespace ctxkit
