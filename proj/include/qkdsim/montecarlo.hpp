#pragma once

#include <cstdint>
#include <vector>

#include "qkdsim/keyrate.hpp"

namespace qkdsim {

/// Per-intensity-class tallies of a simulated session.
struct McClassStats {
    std::uint64_t pulses = 0;
    std::uint64_t clicks = 0;        // detection events, unsifted
    std::uint64_t sifted = 0;        // events surviving basis sifting
    std::uint64_t sifted_errors = 0;
    double empirical_transmittance() const;
    double empirical_qber() const;
};

struct McSessionResult {
    std::vector<McClassStats> per_class;
    std::uint64_t pulses = 0;
    std::uint64_t sifted_bits = 0;   // Q over all classes
    std::uint64_t sifted_errors = 0;
    double empirical_qber() const;   // e over all sifted bits
};

/// Event-level simulation of the detection model behind the transmittance
/// and QBER formulas: every pulse draws an intensity class, a Poisson photon
/// number and per-photon survival; dark, Raman and afterpulse events are
/// independent per gate; detected photons err with probability e_opt, noise
/// and afterpulse events with probability 1/2. Afterpulses trigger at
/// p_afterpulse times the running base click rate. Detection events are
/// counted additively. Deterministic for a given seed.
McSessionResult monte_carlo_session(const DecoyProtocolSpec& protocol,
                                    const ChannelOperatingPoint& point, std::uint64_t n_pulses,
                                    std::uint64_t seed);

} // namespace qkdsim
