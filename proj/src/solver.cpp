#include "qkdsim/solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qkdsim {

namespace {

constexpr double kOptTol = 1e-11;
constexpr double kPivotTol = 1e-11;
constexpr int kMaxIterations = 20000;

// Bounded-variable simplex working state. Columns 0..n-1 are the structural
// variables, n..n+m-1 the row slacks (A x - s = 0), and n+m..n+2m-1 the
// phase-1 artificials.
struct Tableau {
    std::size_t n_struct = 0;
    std::size_t n_slack = 0;
    std::size_t n_art = 0;
    std::size_t m = 0;

    std::vector<std::vector<double>> a; // m x total, current basis inverse applied
    std::vector<double> rhs;            // current basic values, aligned with basis[]
    std::vector<int> basis;             // basic column per row
    std::vector<double> lower, upper;
    std::vector<bool> at_upper; // nonbasic variable rests at upper (else lower)
    std::vector<bool> in_basis;

    std::size_t total() const { return n_struct + n_slack + n_art; }

    double nonbasic_value(std::size_t j) const { return at_upper[j] ? upper[j] : lower[j]; }

    // Recompute the basic values from the nonbasic bound states.
    void refresh_rhs() {
        for (std::size_t i = 0; i < m; ++i) {
            double value = rhs_base[i];
            for (std::size_t j = 0; j < total(); ++j) {
                if (!in_basis[j]) {
                    value -= a[i][j] * nonbasic_value(j);
                }
            }
            rhs[i] = value;
        }
    }

    std::vector<double> rhs_base; // b transformed by the same pivots as a
};

void pivot(Tableau& t, std::size_t row, std::size_t col) {
    const double p = t.a[row][col];
    const std::size_t width = t.total();
    const double inv = 1.0 / p;
    for (std::size_t j = 0; j < width; ++j) {
        t.a[row][j] *= inv;
    }
    t.rhs_base[row] *= inv;
    for (std::size_t i = 0; i < t.m; ++i) {
        if (i == row) continue;
        const double factor = t.a[i][col];
        if (factor == 0.0) continue;
        for (std::size_t j = 0; j < width; ++j) {
            t.a[i][j] -= factor * t.a[row][j];
        }
        t.rhs_base[i] -= factor * t.rhs_base[row];
    }
    t.in_basis[static_cast<std::size_t>(t.basis[row])] = false;
    t.basis[row] = static_cast<int>(col);
    t.in_basis[col] = true;
}

// One simplex phase over the given objective (minimization). Returns false
// when the iteration limit was hit.
bool run_phase(Tableau& t, const std::vector<double>& cost) {
    for (int iter = 0; iter < kMaxIterations; ++iter) {
        t.refresh_rhs();

        // Reduced costs via the dual values of the current tableau: because
        // a[] already carries B^-1 A, the reduced cost of column j is
        // c_j - c_B . a[.][j].
        std::vector<double> cb(t.m);
        for (std::size_t i = 0; i < t.m; ++i) {
            cb[i] = cost[static_cast<std::size_t>(t.basis[i])];
        }

        // Bland: smallest-index eligible entering column.
        std::size_t entering = t.total();
        bool entering_from_upper = false;
        for (std::size_t j = 0; j < t.total(); ++j) {
            if (t.in_basis[j]) continue;
            if (t.upper[j] - t.lower[j] < kPivotTol) continue; // fixed variable
            double reduced = cost[j];
            for (std::size_t i = 0; i < t.m; ++i) {
                reduced -= cb[i] * t.a[i][j];
            }
            if (!t.at_upper[j] && reduced < -kOptTol) {
                entering = j;
                entering_from_upper = false;
                break;
            }
            if (t.at_upper[j] && reduced > kOptTol) {
                entering = j;
                entering_from_upper = true;
                break;
            }
        }
        if (entering == t.total()) {
            return true; // optimal for this phase
        }

        // Direction: increasing from lower bound, decreasing from upper.
        const double dir = entering_from_upper ? -1.0 : 1.0;

        // Ratio test: the entering variable moves by t_step >= 0.
        double best_step = t.upper[entering] - t.lower[entering]; // bound flip
        int leaving_row = -1;
        bool leaving_to_upper = false;
        for (std::size_t i = 0; i < t.m; ++i) {
            const double coef = dir * t.a[i][entering];
            if (std::abs(coef) < kPivotTol) continue;
            const std::size_t bj = static_cast<std::size_t>(t.basis[i]);
            double step;
            bool to_upper;
            if (coef > 0.0) {
                step = (t.rhs[i] - t.lower[bj]) / coef; // basic decreases to lower
                to_upper = false;
            } else {
                step = (t.rhs[i] - t.upper[bj]) / coef; // basic increases to upper
                to_upper = true;
            }
            if (step < 0.0) step = 0.0; // degenerate blocking constraint
            if (step < best_step - 1e-15 ||
                (leaving_row >= 0 && std::abs(step - best_step) <= 1e-15 &&
                 t.basis[i] < t.basis[leaving_row])) {
                best_step = step;
                leaving_row = static_cast<int>(i);
                leaving_to_upper = to_upper;
            }
        }

        if (!std::isfinite(best_step)) {
            return true; // cannot happen with finite bounds; defensive stop
        }

        if (leaving_row < 0) {
            // Pure bound flip of the entering variable.
            t.at_upper[entering] = !entering_from_upper;
            continue;
        }

        const std::size_t leaving_col = static_cast<std::size_t>(t.basis[leaving_row]);
        pivot(t, static_cast<std::size_t>(leaving_row), entering);
        t.at_upper[leaving_col] = leaving_to_upper;
        t.at_upper[entering] = false; // basic now; flag unused until it leaves
    }
    return false;
}

} // namespace

LpSolution solve_lp(const LpProblem& problem, bool maximize) {
    const std::size_t n = problem.num_vars();
    const std::size_t m = problem.num_rows();
    if (problem.rows.size() != m || problem.row_lo.size() != m || problem.row_hi.size() != m ||
        problem.lower.size() != n || problem.upper.size() != n) {
        throw std::invalid_argument("inconsistent LP dimensions");
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (!(problem.lower[j] <= problem.upper[j]) || !std::isfinite(problem.lower[j]) ||
            !std::isfinite(problem.upper[j])) {
            throw std::invalid_argument("LP variable bounds must be finite and ordered");
        }
    }

    Tableau t;
    t.n_struct = n;
    t.n_slack = m;
    t.n_art = m;
    t.m = m;
    const std::size_t width = t.total();

    t.a.assign(m, std::vector<double>(width, 0.0));
    t.rhs_base.assign(m, 0.0);
    t.rhs.assign(m, 0.0);
    t.lower.assign(width, 0.0);
    t.upper.assign(width, 0.0);
    t.at_upper.assign(width, false);
    t.in_basis.assign(width, false);
    t.basis.assign(m, 0);

    for (std::size_t j = 0; j < n; ++j) {
        t.lower[j] = problem.lower[j];
        t.upper[j] = problem.upper[j];
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (!(problem.row_lo[i] <= problem.row_hi[i])) {
            throw std::invalid_argument("LP row range must be ordered");
        }
        for (std::size_t j = 0; j < n; ++j) {
            t.a[i][j] = problem.rows[i][j];
        }
        t.a[i][n + i] = -1.0; // A x - s = 0
        t.lower[n + i] = problem.row_lo[i];
        t.upper[n + i] = problem.row_hi[i];
    }

    // Start with every structural variable and slack at its lower bound; the
    // artificials absorb the residual so the initial basis is the identity.
    for (std::size_t i = 0; i < m; ++i) {
        double residual = 0.0;
        for (std::size_t j = 0; j < n + m; ++j) {
            residual -= t.a[i][j] * t.lower[j];
        }
        // residual = b_i - A_i . x_N with b = 0
        const std::size_t art = n + m + i;
        t.a[i][art] = residual >= 0.0 ? 1.0 : -1.0;
        t.lower[art] = 0.0;
        t.upper[art] = std::abs(residual) + 1.0;
        t.basis[i] = static_cast<int>(art);
        t.in_basis[art] = true;
    }

    LpSolution solution;

    // Phase 1: minimize the artificial mass.
    std::vector<double> phase1_cost(width, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        phase1_cost[n + m + i] = 1.0;
    }
    if (!run_phase(t, phase1_cost)) {
        throw std::runtime_error("LP phase 1 exceeded the iteration limit");
    }
    t.refresh_rhs();
    double artificial_mass = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t bj = static_cast<std::size_t>(t.basis[i]);
        if (bj >= n + m) {
            artificial_mass += std::abs(t.rhs[i]);
        }
    }
    for (std::size_t j = n + m; j < width; ++j) {
        if (!t.in_basis[j]) {
            artificial_mass += t.nonbasic_value(j);
        }
    }
    if (artificial_mass > 1e-8) {
        solution.status = LpStatus::infeasible;
        solution.infeasibility = artificial_mass;
        return solution;
    }
    // Freeze the artificials at zero for phase 2.
    for (std::size_t j = n + m; j < width; ++j) {
        t.upper[j] = 0.0;
        if (!t.in_basis[j]) {
            t.at_upper[j] = false;
        }
    }

    // Phase 2: the real objective.
    std::vector<double> phase2_cost(width, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        phase2_cost[j] = maximize ? -problem.objective[j] : problem.objective[j];
    }
    if (!run_phase(t, phase2_cost)) {
        throw std::runtime_error("LP phase 2 exceeded the iteration limit");
    }
    t.refresh_rhs();

    solution.status = LpStatus::optimal;
    solution.x.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        solution.x[j] = t.in_basis[j] ? 0.0 : t.nonbasic_value(j);
    }
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t bj = static_cast<std::size_t>(t.basis[i]);
        if (bj < n) {
            solution.x[bj] = t.rhs[i];
        }
    }
    double value = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        value += problem.objective[j] * solution.x[j];
    }
    solution.objective = value;
    return solution;
}

} // namespace qkdsim
