#pragma once

#include <array>
#include <optional>
#include <vector>

#include "ctxkit/cyclotomic.hpp"
#include "ctxkit/phase_space.hpp"
#include "ctxkit/scenario.hpp"

namespace ctxkit {

/// Smallest cyclotomic conductor housing all matrix entries for arity d:
/// Q(i) for qubits (Y needs i), Q(w_d) for odd prime d.
int natural_conductor(int d);

/// The Weyl operator of a phase point as a d^n x d^n matrix. For odd d this
/// is the tensor product of w^(-(1/2) p q) Z^p X^q per qudit (1/2 the inverse
/// of 2 mod d), which makes a -> W(a) a homomorphism on isotropic subspaces;
/// for qubits it is the Hermitian Pauli word with Y = iXZ. `conductor` must
/// be a multiple of the natural conductor (pass 0 for the natural one).
CycMatrix weyl_operator(const PhasePoint& a, int conductor = 0);

/// The rank-one stabilizer projector determined by a Lagrangian subspace and
/// a phase point: the character-sum over the subspace for odd d, the product
/// of generator eigenprojectors, with signs read off the symplectic pairing
/// against the canonical basis, for qubits. Hermitian, idempotent, trace 1.
CycMatrix stabilizer_projector(const LagrangianSubspace& m, const PhasePoint& v,
                               int conductor = 0);

/// A state vector of d^n exact cyclotomic amplitudes, not necessarily
/// normalized and not identically zero.
struct StateVector {
    int conductor = 1;
    CycVector amplitudes;
};

/// Rational convex combination of pure states (weights summing to 1); used
/// for density inputs such as the maximally mixed state.
using StateMixture = std::vector<std::pair<Rational, StateVector>>;

StateVector basis_state(int dimension, int index, int conductor);
/// Uniform mixture over the computational basis.
StateMixture maximally_mixed_state(int qudits, int d);

/// The n-qudit stabilizer measurement scenario: measurements are the
/// canonical Pauli labels (projective phase-space points), contexts the sets
/// of labels inside each Lagrangian subspace.
struct StabilizerScenario {
    int qudits = 0;
    int d = 2;
    MeasurementScenario scenario;
    std::vector<PauliLabel> labels;                     // per measurement index
    std::vector<LagrangianSubspace> context_subspaces;  // per context index
};

StabilizerScenario stabilizer_scenario(int qudits, int d, long point_cap = 1L << 16);

/// Born-rule empirical model of a pure state or mixture on the stabilizer
/// scenario. Every formal event that no (M, v) projector realizes gets exact
/// probability 0; realized events get <psi|P|psi>/<psi|psi>, which must be
/// rational (it always is for the natural conductors of d = 2, 3).
EmpiricalModel quantum_empirical_model(const StabilizerScenario& ss, const StateVector& psi);
EmpiricalModel quantum_empirical_model(const StabilizerScenario& ss, const StateMixture& rho);

/// General Born-rule model for an arbitrary scenario whose measurements are
/// unitary d-th-root-of-identity matrices (eigenvalues w^k, outcome k).
/// Used for the GHZ parity scenario; also a slow independent route to the
/// stabilizer tables above.
EmpiricalModel quantum_model_from_operators(const MeasurementScenario& s,
                                            const std::vector<CycMatrix>& measurement_operators,
                                            const StateMixture& rho);

/// The quantum-possible events of a context: outcome tuples realized by some
/// (M, v) projector, with the projector and one of its state columns.
struct ContextStabilizerStates {
    std::vector<std::vector<Outcome>> outcome_tuples;
    std::vector<CycMatrix> projectors;
    std::vector<CycVector> state_columns;
};
ContextStabilizerStates context_states(const StabilizerScenario& ss, int context,
                                       int conductor = 0);

// --- Peres-Mermin square ------------------------------------------------------

struct MerminReport {
    int qubits = 0;
    bool lines_commute = false;       // the six triples pairwise commute
    std::array<int, 3> row_signs{};   // +1 / -1: product of each row
    std::array<int, 3> column_signs{};
    bool one_minus_sign = false;      // exactly one -1 among the six products
    bool valuation_exists = true;     // multiplicative valuation consistent with all six
    int valuations_tried = 0;
    bool passed() const { return lines_commute && one_minus_sign && !valuation_exists; }
};

/// Builds the 3x3 table of two-qubit Paulis (tensored with identities for
/// n > 2), checks that rows and columns commute, that the six line products
/// are +-identity with exactly one minus sign, and that no assignment of +-1
/// to the nine entries reproduces all six product signs.
MerminReport mermin_square_check(int qubits);

/// Exhaustive search for v: cells -> {+-1} with the given products over the
/// three rows and three columns of a 3x3 table. Exposed so tests can check a
/// satisfiable control case.
std::optional<std::array<int, 9>> find_multiplicative_valuation(
    const std::array<int, 6>& line_signs);

}  // namespace ctxkit
