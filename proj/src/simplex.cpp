#include "ctxkit/simplex.hpp"

#include <stdexcept>

#include "ctxkit/errors.hpp"

namespace ctxkit {

namespace {

/// Dense simplex tableau. Columns: original variables, then slack/surplus,
/// then artificials, then the right-hand side. One objective row at the
/// bottom (stored negated so pivoting is uniform).
class Tableau {
public:
    Tableau(const LinearProgram& lp) {
        const int m = static_cast<int>(lp.constraints.size());
        n_orig_ = lp.variable_count;

        // Count auxiliary columns. Rows are normalized to rhs >= 0 first.
        int slacks = 0, artificials = 0;
        std::vector<int> sign(m, 1);
        for (int i = 0; i < m; ++i) {
            const auto& c = lp.constraints[i];
            if (static_cast<int>(c.coefficients.size()) != n_orig_)
                throw input_error("constraint width does not match variable count");
            LinearConstraint::Relation rel = c.relation;
            if (c.rhs < 0) {
                sign[i] = -1;
                rel = flip(rel);
            }
            if (rel != LinearConstraint::Relation::Eq)
                ++slacks;
            if (rel != LinearConstraint::Relation::LessEq)
                ++artificials;
        }
        n_slack_ = slacks;
        n_art_ = artificials;
        cols_ = n_orig_ + n_slack_ + n_art_ + 1;  // + rhs
        rows_.assign(m, std::vector<Rational>(cols_, Rational(0)));
        basis_.assign(m, -1);

        int next_slack = n_orig_;
        int next_art = n_orig_ + n_slack_;
        for (int i = 0; i < m; ++i) {
            const auto& c = lp.constraints[i];
            LinearConstraint::Relation rel = sign[i] < 0 ? flip(c.relation) : c.relation;
            for (int j = 0; j < n_orig_; ++j)
                rows_[i][j] = sign[i] * c.coefficients[j];
            rhs(i) = sign[i] * c.rhs;
            switch (rel) {
                case LinearConstraint::Relation::LessEq:
                    rows_[i][next_slack] = 1;
                    basis_[i] = next_slack++;
                    break;
                case LinearConstraint::Relation::GreaterEq:
                    rows_[i][next_slack++] = -1;
                    rows_[i][next_art] = 1;
                    basis_[i] = next_art++;
                    break;
                case LinearConstraint::Relation::Eq:
                    rows_[i][next_art] = 1;
                    basis_[i] = next_art++;
                    break;
            }
        }
    }

    /// Phase 1: maximize -(sum of artificials). Returns true iff a feasible
    /// basis (artificial sum zero) was reached.
    bool phase1() {
        if (n_art_ == 0)
            return true;
        obj_.assign(cols_, Rational(0));
        for (int j = n_orig_ + n_slack_; j < cols_ - 1; ++j)
            obj_[j] = 1;  // minimize sum of artificials == maximize its negation
        // Price out the basic artificials.
        for (int i = 0; i < row_count(); ++i) {
            if (basis_[i] >= n_orig_ + n_slack_) {
                for (int j = 0; j < cols_; ++j)
                    obj_[j] -= rows_[i][j];
            }
        }
        run(/*allow_artificial=*/true);
        if (-obj_[cols_ - 1] != 0)
            return false;  // leftover infeasibility
        drive_out_artificials();
        return true;
    }

    /// Phase 2 with the real objective. Returns false when unbounded.
    bool phase2(const std::vector<Rational>& objective) {
        obj_.assign(cols_, Rational(0));
        for (int j = 0; j < n_orig_; ++j)
            obj_[j] = -objective[j];  // negated: row form of "max c.x"
        for (int i = 0; i < row_count(); ++i) {
            if (basis_[i] < n_orig_ && obj_[basis_[i]] != 0) {
                const Rational f = obj_[basis_[i]];
                for (int j = 0; j < cols_; ++j)
                    obj_[j] -= f * rows_[i][j];
            }
        }
        return run(/*allow_artificial=*/false);
    }

    Rational objective_value() const { return obj_[cols_ - 1]; }

    std::vector<Rational> solution() const {
        std::vector<Rational> x(n_orig_, Rational(0));
        for (int i = 0; i < row_count(); ++i) {
            if (basis_[i] < n_orig_)
                x[basis_[i]] = rhs_const(i);
        }
        return x;
    }

private:
    static LinearConstraint::Relation flip(LinearConstraint::Relation rel) {
        switch (rel) {
            case LinearConstraint::Relation::LessEq:
                return LinearConstraint::Relation::GreaterEq;
            case LinearConstraint::Relation::GreaterEq:
                return LinearConstraint::Relation::LessEq;
            default:
                return LinearConstraint::Relation::Eq;
        }
    }

    int row_count() const { return static_cast<int>(rows_.size()); }
    Rational& rhs(int i) { return rows_[i][cols_ - 1]; }
    const Rational& rhs_const(int i) const { return rows_[i][cols_ - 1]; }

    /// Bland's rule: entering = lowest-index column with negative reduced
    /// cost; leaving = lowest-index basic variable among minimum ratios.
    /// Returns false when unbounded.
    bool run(bool allow_artificial) {
        const int eligible = allow_artificial ? cols_ - 1 : n_orig_ + n_slack_;
        for (;;) {
            int enter = -1;
            for (int j = 0; j < eligible; ++j) {
                if (obj_[j] < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0)
                return true;
            int leave = -1;
            Rational best_ratio;
            for (int i = 0; i < row_count(); ++i) {
                if (rows_[i][enter] > 0) {
                    Rational ratio = rhs_const(i) / rows_[i][enter];
                    if (leave < 0 || ratio < best_ratio ||
                        (ratio == best_ratio && basis_[i] < basis_[leave])) {
                        leave = i;
                        best_ratio = ratio;
                    }
                }
            }
            if (leave < 0)
                return false;  // unbounded direction
            pivot(leave, enter);
        }
    }

    void pivot(int row, int col) {
        const Rational p = rows_[row][col];
        for (int j = 0; j < cols_; ++j)
            rows_[row][j] /= p;
        for (int i = 0; i < row_count(); ++i) {
            if (i != row && rows_[i][col] != 0) {
                const Rational f = rows_[i][col];
                for (int j = 0; j < cols_; ++j)
                    rows_[i][j] -= f * rows_[row][j];
            }
        }
        if (obj_[col] != 0) {
            const Rational f = obj_[col];
            for (int j = 0; j < cols_; ++j)
                obj_[j] -= f * rows_[row][j];
        }
        basis_[row] = col;
    }

    /// After phase 1, pivot any artificial still in the basis (necessarily at
    /// zero) onto a real column, or leave it if its row is all zero.
    void drive_out_artificials() {
        for (int i = 0; i < row_count(); ++i) {
            if (basis_[i] < n_orig_ + n_slack_)
                continue;
            int col = -1;
            for (int j = 0; j < n_orig_ + n_slack_; ++j) {
                if (rows_[i][j] != 0) {
                    col = j;
                    break;
                }
            }
            if (col >= 0)
                pivot(i, col);
            // else: redundant row; the artificial stays basic at zero, which
            // is harmless because artificial columns are never re-entered.
        }
    }

    int n_orig_ = 0, n_slack_ = 0, n_art_ = 0, cols_ = 0;
    std::vector<std::vector<Rational>> rows_;
    std::vector<Rational> obj_;
    std::vector<int> basis_;
};

}  // namespace

SimplexResult solve_lp(const LinearProgram& lp) {
    if (static_cast<int>(lp.objective.size()) != lp.variable_count)
        throw input_error("objective width does not match variable count");
    Tableau t(lp);
    SimplexResult result;
    if (!t.phase1()) {
        result.status = SimplexResult::Status::Infeasible;
        return result;
    }
    if (!t.phase2(lp.objective)) {
        result.status = SimplexResult::Status::Unbounded;
        return result;
    }
    result.status = SimplexResult::Status::Optimal;
    result.value = t.objective_value();
    result.solution = t.solution();
    return result;
}

}  // namespace ctxkit
