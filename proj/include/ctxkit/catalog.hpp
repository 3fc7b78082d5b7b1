#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ctxkit/logic.hpp"
#include "ctxkit/scenario.hpp"
#include "ctxkit/stabilizer.hpp"

namespace ctxkit {

/// The standard Bell scenario: measurements A0, A1, B0, B1; contexts
/// {A0,B0}, {A0,B1}, {A1,B0}, {A1,B1}; binary outcomes.
MeasurementScenario bell_scenario();

/// Named empirical models:
///   bell_table - the Bell-state correlation table
///   pr_box     - the PR-box table
///   hardy      - a rational realization of the Hardy possibilistic support
///   ghz        - the GHZ state under per-party X/Y measurements (8 contexts),
///                computed through the quantum backend
EmpiricalModel catalog_model(const std::string& name);

/// Named state vectors: cs_state (the two-qutrit magic state with amplitudes
/// w^(j k^2)), or "file:<path>" for a user-supplied amplitude file.
StateVector catalog_state(const std::string& name);

bool is_catalog_model(const std::string& name);
bool is_catalog_state(const std::string& name);

/// The CHSH weighting on the Bell scenario: weight 1 on the PR-box support
/// (outcomes 00/11 in the first three contexts, 01/10 in the last), 0
/// elsewhere. The classical bound of the induced CSW inequality is 3.
std::vector<EventWeight> chsh_weights();

/// Parse a state amplitude file:
///   cyclotomic m=<conductor> dim=<dimension>
///   <index>: c0,c1,...   (rational coefficients of w^0, w^1, ...)
/// Unlisted indices are zero; '#' starts a comment. Throws input_error on
/// malformed input or an identically zero vector.
StateVector parse_amplitude_file(std::istream& in);
void write_amplitude_file(const StateVector& psi, std::ostream& out);

}  // namespace ctxkit
