#include "qkdsim/decoy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qkdsim/solver.hpp"

namespace qkdsim {

namespace {

struct GainSystem {
    std::vector<std::vector<double>> coefficients; // class x photon number
    std::vector<double> tail_mass;                 // truncated Poisson mass per class
};

GainSystem build_gain_system(const DecoyProtocolSpec& protocol) {
    GainSystem system;
    for (const auto& cls : protocol.intensities) {
        std::vector<double> row(kDecoyPhotonCutoff + 1);
        double covered = 0.0;
        for (int n = 0; n <= kDecoyPhotonCutoff; ++n) {
            row[static_cast<std::size_t>(n)] = poisson_pmf(n, cls.mu);
            covered += row[static_cast<std::size_t>(n)];
        }
        system.coefficients.push_back(std::move(row));
        system.tail_mass.push_back(std::max(0.0, 1.0 - covered));
    }
    return system;
}

LpProblem yield_program(const GainSystem& system, const std::vector<ClassObservation>& observations) {
    const std::size_t n_vars = kDecoyPhotonCutoff + 1;
    LpProblem lp;
    lp.objective.assign(n_vars, 0.0);
    lp.lower.assign(n_vars, 0.0);
    lp.upper.assign(n_vars, 1.0);
    for (std::size_t i = 0; i < observations.size(); ++i) {
        lp.rows.push_back(system.coefficients[i]);
        // The truncated orders contribute between 0 and the full tail mass,
        // so the retained sum lies in [T_i - tail, T_i].
        lp.row_lo.push_back(observations[i].transmittance - system.tail_mass[i]);
        lp.row_hi.push_back(observations[i].transmittance);
    }
    return lp;
}

double solve_yield(const GainSystem& system, const std::vector<ClassObservation>& observations,
                   int photon_number) {
    LpProblem lp = yield_program(system, observations);
    lp.objective[static_cast<std::size_t>(photon_number)] = 1.0;
    const LpSolution solution = solve_lp(lp);
    if (solution.status != LpStatus::optimal) {
        throw EstimationError("decoy yield program infeasible (residual " +
                              std::to_string(solution.infeasibility) + ")");
    }
    return solution.x[static_cast<std::size_t>(photon_number)];
}

} // namespace

DecoyEstimate decoy_estimate(const DecoyProtocolSpec& protocol,
                             const std::vector<ClassObservation>& observations) {
    if (protocol.intensities.size() < 3) {
        throw EstimationError("decoy estimation needs at least three intensity classes");
    }
    if (observations.size() != protocol.intensities.size()) {
        throw EstimationError("need one observation per intensity class");
    }

    const GainSystem system = build_gain_system(protocol);

    DecoyEstimate estimate;
    estimate.y1 = solve_yield(system, observations, 1);
    estimate.y0 = solve_yield(system, observations, 0);

    // Error program over z_n = e_n Y_n. The zero-photon class carries e_0 =
    // 1/2 exactly, pinned through the Y_0 estimate; higher orders satisfy
    // z_n <= Y_n / 2 <= 1/2.
    LpProblem error_lp;
    const std::size_t n_vars = kDecoyPhotonCutoff + 1;
    error_lp.objective.assign(n_vars, 0.0);
    error_lp.objective[1] = 1.0;
    error_lp.lower.assign(n_vars, 0.0);
    error_lp.upper.assign(n_vars, 0.5);

    // Bracket Y_0 from both sides so pinning z_0 never cuts the truth away.
    LpProblem y0_max_lp = yield_program(system, observations);
    y0_max_lp.objective[0] = 1.0;
    const LpSolution y0_max = solve_lp(y0_max_lp, /*maximize=*/true);
    if (y0_max.status != LpStatus::optimal) {
        throw EstimationError("decoy yield program infeasible");
    }
    error_lp.lower[0] = 0.5 * estimate.y0;
    error_lp.upper[0] = std::max(0.5 * y0_max.x[0], error_lp.lower[0]);

    for (std::size_t i = 0; i < observations.size(); ++i) {
        error_lp.rows.push_back(system.coefficients[i]);
        const double error_gain = observations[i].qber * observations[i].transmittance;
        // Truncated error mass lies in [0, tail/2].
        error_lp.row_lo.push_back(error_gain - 0.5 * system.tail_mass[i]);
        error_lp.row_hi.push_back(error_gain);
    }
    const LpSolution z = solve_lp(error_lp, /*maximize=*/true);
    if (z.status != LpStatus::optimal) {
        throw EstimationError("decoy error program infeasible (residual " +
                              std::to_string(z.infeasibility) + ")");
    }
    if (estimate.y1 <= 0.0) {
        estimate.e1 = 0.5;
    } else {
        estimate.e1 = std::min(0.5, z.x[1] / estimate.y1);
    }
    return estimate;
}

} // namespace qkdsim
