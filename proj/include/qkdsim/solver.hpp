#pragma once

#include <cstddef>
#include <vector>

namespace qkdsim {

/// Dense linear program
///     minimize (or maximize) c.x
///     subject to row_lo <= A x <= row_hi and lower <= x <= upper.
///
/// Ranged rows express equalities (row_lo == row_hi) as well as the small
/// slack intervals the decoy estimator uses for truncation tails. All
/// variable bounds must be finite.
struct LpProblem {
    std::vector<double> objective;
    std::vector<std::vector<double>> rows;
    std::vector<double> row_lo;
    std::vector<double> row_hi;
    std::vector<double> lower;
    std::vector<double> upper;

    std::size_t num_vars() const { return objective.size(); }
    std::size_t num_rows() const { return rows.size(); }
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    double objective = 0.0;
    std::vector<double> x;
    double infeasibility = 0.0; // phase-1 residual, meaningful when infeasible
};

/// Two-phase bounded-variable simplex with Bland's rule. Deterministic:
/// identical inputs follow the identical pivot sequence.
LpSolution solve_lp(const LpProblem& problem, bool maximize = false);

} // namespace qkdsim
