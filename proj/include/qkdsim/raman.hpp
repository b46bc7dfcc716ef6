#pragma once

#include <map>
#include <vector>

#include "qkdsim/detector.hpp"
#include "qkdsim/fiber.hpp"
#include "qkdsim/quantities.hpp"

namespace qkdsim {

/// Propagation direction of a classical channel relative to the quantum
/// channel (which always runs Alice -> Bob).
enum class Direction { alice_to_bob, bob_to_alice };

const char* to_string(Direction d);

/// Which analytic form to use for the backward scatter.
/// `integral` carries the 1/(alpha_d + alpha_q) factor implied by the
/// path integral; `paper_literal` omits it. The absolute scale of the
/// coefficient table absorbs the difference either way.
enum class BackwardForm { integral, paper_literal };

/// Raman scatter coefficients per pump channel and direction, in 1/km,
/// normalized to `reference_bandwidth_nm` of collection bandwidth.
struct RamanCoefficientTable {
    struct Key {
        double pump_nm;
        Direction direction;
        auto operator<=>(const Key&) const = default;
    };

    std::map<Key, double> beta_per_km;
    double reference_bandwidth_nm = 13.0;

    /// Coefficient scaled to the given collection bandwidth. Throws
    /// ConfigError naming the channel when no entry exists.
    double beta(Wavelength pump, Direction direction, double collection_bandwidth_nm) const;
    bool has(Wavelength pump, Direction direction) const;
};

/// One classical laser sharing the fiber.
struct RamanSource {
    Wavelength pump;
    Direction direction = Direction::alice_to_bob;
    double launch_dbm = 0.0;
};

/// Raman noise powers at the quantum receiver.
struct NoiseBudget {
    double forward_w = 0.0;  // co-propagating contribution at the demux output
    double backward_w = 0.0; // counter-propagating contribution at the demux output
    double raman_power_w = 0.0; // forward_w + backward_w
    double after_nbf_w = 0.0;   // raman_power_w reduced by the NBF rejection
};

/// Co-propagating scatter collected at the far fiber end:
/// beta * I * e^(-alpha_q L) * (e^((alpha_q - alpha_d) L) - 1) / (alpha_q - alpha_d).
/// Attenuation coefficients are in natural units (1/km). The degenerate
/// alpha_q == alpha_d case reduces to beta * I * L * e^(-alpha_q L).
double forward_scatter_w(double beta_per_km, double launch_w, double alpha_d_per_km,
                         double alpha_q_per_km, double length_km);

/// Counter-propagating scatter collected at the launch end. The integral
/// form is beta * I * (1 - e^(-(alpha_d + alpha_q) L)) / (alpha_d + alpha_q);
/// the paper_literal form drops the denominator.
double backward_scatter_w(double beta_per_km, double launch_w, double alpha_d_per_km,
                          double alpha_q_per_km, double length_km,
                          BackwardForm form = BackwardForm::integral);

/// Fiber length maximizing the forward scatter, ln(alpha_q/alpha_d)/(alpha_q-alpha_d),
/// for alpha_d > alpha_q.
double forward_scatter_argmax_km(double alpha_d_per_km, double alpha_q_per_km);

/// Convert a dB/km attenuation figure to natural units (1/km).
double natural_attenuation_per_km(double db_per_km);

/// Sums the scatter of every active classical laser into the quantum
/// passband at fiber length `length_km`, applying launch-side mux insertion,
/// receive-side demux insertion and the NBF rejection.
NoiseBudget total_raman_into_receiver(const std::vector<RamanSource>& sources,
                                      const FiberSpec& fiber, const CwdmGrid& grid,
                                      const QuantumChannelSpec& quantum,
                                      const RamanCoefficientTable& table, double length_km,
                                      BackwardForm form = BackwardForm::integral);

/// Probability of registering a noise photon per detector gate:
/// (P / E_photon) / clock_rate * eta_async, capped at 1. The power must
/// already include every optical loss between fiber and detector.
double counts_per_gate(double noise_power_at_detector_w, Wavelength lambda_q,
                       double clock_rate_hz, const DetectorSpec& detector);

/// Raman tolerance: noise must sit at least 10 dB below the quantum signal.
struct ToleranceResult {
    bool passed = false;
    double margin_db = 0.0; // signed; capped at +999 for zero noise
};

ToleranceResult raman_tolerance_check(double signal_w, double noise_w);

inline constexpr double kRamanToleranceDb = 10.0;
inline constexpr double kToleranceMarginCapDb = 999.0;

} // namespace qkdsim
