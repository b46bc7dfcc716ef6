#pragma once

#include <vector>

#include "qkdsim/keyrate.hpp"

namespace qkdsim {

/// Per-class observation fed to the estimator: transmittance and error rate.
struct ClassObservation {
    double transmittance = 0.0; // T_i
    double qber = 0.0;          // E_i
};

/// Estimates from the decoy linear programs.
struct DecoyEstimate {
    double y0 = 0.0; // zero-photon yield (lower bound)
    double y1 = 0.0; // single-photon yield (lower bound)
    double e1 = 0.0; // single-photon error rate (upper bound)
};

/// Photon-number cutoff of the linear programs. The Poisson mass above this
/// order is below 1e-9 for every intensity in use.
inline constexpr int kDecoyPhotonCutoff = 9;

/// Solves the decoy linear programs over photon-number yields Y_n and error
/// products e_n Y_n with Poisson gain constraints taken as equalities up to
/// the truncation-tail slack (asymptotic mode): minimize Y_1 and Y_0,
/// maximize e_1 Y_1 with e_0 fixed at 1/2. Needs one observation per
/// intensity class (>= 3 classes). Throws EstimationError when the
/// observations admit no yield vector.
DecoyEstimate decoy_estimate(const DecoyProtocolSpec& protocol,
                             const std::vector<ClassObservation>& observations);

} // namespace qkdsim
