#pragma once

#include <map>
#include <vector>

#include "qkdsim/quantities.hpp"

namespace qkdsim {

/// Fiber plant description: attenuation per wavelength (linearly interpolated
/// in dB/km between table nodes), chromatic dispersion and the fixed
/// connector loss of the link.
struct FiberSpec {
    std::map<double, double> attenuation_db_per_km; // keyed by wavelength in nm
    double dispersion_ps_per_nm_km = 0.0;
    double length_km = 0.0;
    double connector_loss_db = 0.0;
};

/// Coarse WDM mux/demux: passband centers with per-passband insertion loss.
struct CwdmGrid {
    std::vector<Wavelength> passband_centers;
    double passband_width_nm = 13.0;
    std::vector<double> insertion_loss_db; // one entry per passband
    double adjacent_isolation_db = 30.0;

    /// Index of the passband hosting lambda, or -1 when unassigned.
    int passband_index(Wavelength lambda) const;
    double insertion_loss_for(Wavelength lambda) const;
};

/// Narrow bandpass filter stage of the quantum receiver.
struct QuantumChannelSpec {
    Wavelength center{1551.0};
    double nbf_bandwidth_nm = 0.56;
    double nbf_insertion_loss_db = 0.6;
    double nbf_rejection_db = 15.0;
};

/// Attenuation in dB/km at lambda, interpolated linearly between table nodes.
/// Throws ConfigError when lambda lies outside the table hull.
double attenuation_db_per_km(const FiberSpec& fiber, Wavelength lambda);

/// Power transmission factor 10^(-a*d/10) of `distance_km` of fiber at lambda.
double attenuation_linear(const FiberSpec& fiber, Wavelength lambda, double distance_km);

/// Intersymbol-interference penalty of chromatic dispersion on a data
/// channel, in dB. Scales linearly with D*L and quadratically with the bit
/// rate, anchored to 1.0 dB for 1.25 Gb/s over 90 km of 4 ps/(nm km) fiber.
double dispersion_penalty_db(const FiberSpec& fiber, double bit_rate_bps, double distance_km);

/// End-to-end loss of a channel: fiber attenuation + mux insertion + demux
/// insertion + connector loss. `is_quantum` adds the NBF insertion.
double end_to_end_loss_db(const FiberSpec& fiber, const CwdmGrid& grid, Wavelength channel,
                          double distance_km, bool is_quantum = false,
                          const QuantumChannelSpec* quantum = nullptr);

} // namespace qkdsim
