#pragma once

#include <cstddef>
#include <vector>

#include "qkdsim/quantities.hpp"

namespace qkdsim {

/// One decoy intensity class: mean photon number and the probability of
/// transmitting it.
struct IntensityClass {
    double mu = 0.0;
    double probability = 0.0;
};

/// Decoy-state BB84 protocol parameters.
struct DecoyProtocolSpec {
    std::vector<IntensityClass> intensities;
    std::size_t signal_index = 0;
    double clock_rate_hz = 1e9;
    double sifting_factor = 0.5;
    double f_ec = 1.1;
    double e_opt = 0.0;

    void check() const;
    const IntensityClass& signal() const { return intensities.at(signal_index); }
};

/// Link parameters entering the transmittance and QBER formulas at one
/// operating point. `channel_transmission` is the per-photon survival from
/// Alice's output to the receiver input (fiber, mux, connectors and any
/// timing penalty); `eta_bob` covers the receiver internals and detector.
struct ChannelOperatingPoint {
    double channel_transmission = 1.0;
    double eta_bob = 1.0;
    double p_dark = 0.0;
    double p_raman = 0.0;
    double p_afterpulse = 0.0;
};

/// Per-class and overall detection statistics.
struct LinkObservables {
    std::vector<double> transmittance;   // T_i, afterpulse included
    std::vector<double> qber_per_class;  // E_i of the event model
    double overall_transmittance = 0.0;  // T, afterpulse excluded
    double p_dark = 0.0;
    double p_raman = 0.0;
};

/// Session tallies feeding the secure-rate formula.
struct SessionCounts {
    double sifted_bits = 0.0;        // Q
    double single_photon_bits = 0.0; // Q1 estimate
    double zero_photon_bits = 0.0;   // Q0 estimate
    double qber = 0.0;               // e
    double single_photon_qber = 0.0; // e1 estimate
    double duration_s = 1.0;         // t
};

struct KeyRateReport {
    double sifted_bps = 0.0;
    double secure_bps = 0.0;
    double qber = 0.0;
    double qber_floor = 0.0;
    double qber_dark = 0.0;
    double qber_raman = 0.0;
};

/// Binary entropy -x log2 x - (1-x) log2 (1-x) with H(0)=H(1)=0.
double binary_entropy(double x);

/// Length-dependent QBER term of the signal class:
/// 0.5 (P_d + P_R) / (mu T_ch eta_Bob + P_d + P_R).
double noise_qber_component(double mu, double channel_transmission, double eta_bob,
                            double p_dark, double p_raman);

/// Total QBER: (e_opt + P_a/2) + e_n, clamped to [0, 0.5].
double total_qber(double e_opt, double p_afterpulse, double e_noise);

/// Overall and per-class transmittances plus the per-class error rates of
/// the additive event model.
LinkObservables transmittances(const DecoyProtocolSpec& protocol,
                               const ChannelOperatingPoint& point);

/// Secure key rate [Q1 (1 - H(e1)) - Q f_EC H(e) + Q0] / t, clamped at 0.
double secure_rate_bps(const SessionCounts& counts, double f_ec);

/// Sifted key rate clock * sifting * sum_i P_i T_i.
double sifted_rate_bps(const DecoyProtocolSpec& protocol, const LinkObservables& observables);

/// Poisson probability of n photons from a pulse of mean mu.
double poisson_pmf(int n, double mu);

} // namespace qkdsim
