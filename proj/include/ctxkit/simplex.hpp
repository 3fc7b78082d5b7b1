#pragma once

#include <vector>

#include "ctxkit/rational.hpp"

namespace ctxkit {

struct LinearConstraint {
    enum class Relation { LessEq, Eq, GreaterEq };
    std::vector<Rational> coefficients;
    Relation relation = Relation::LessEq;
    Rational rhs;
};

/// max objective . x  subject to the constraints and x >= 0.
struct LinearProgram {
    int variable_count = 0;
    std::vector<Rational> objective;
    std::vector<LinearConstraint> constraints;
};

struct SimplexResult {
    enum class Status { Optimal, Infeasible, Unbounded };
    Status status = Status::Optimal;
    Rational value;
    std::vector<Rational> solution;  // original variables only
};

/// Two-phase primal simplex over exact rationals with Bland's rule, so the
/// solve terminates on every input and the optimum is exact.
SimplexResult solve_lp(const LinearProgram& lp);

}  // namespace ctxkit
