#pragma once

#include <utility>
#include <vector>

#include "qkdsim/fiber.hpp"
#include "qkdsim/raman.hpp"

namespace qkdsim {

/// Gb/s data channel. `sensitivity_dbm` is the received power achieving a
/// bit error ratio of 1e-9. `launch_auto` derives the launch power from the
/// path loss at the operating length instead of using `launch_power_dbm`.
struct DataChannelSpec {
    Wavelength wavelength{1611.0};
    double bit_rate_bps = 1.25e9;
    double sensitivity_dbm = -36.8;
    double ber_slope_decades_per_db = -1.5;
    double launch_power_dbm = 0.0;
    bool launch_auto = true;
    double launch_margin_db = 0.5;
    Direction direction = Direction::alice_to_bob;
};

/// Clock distribution channel with its measured jitter-vs-received-power
/// table (sorted by power, jitter nonincreasing).
struct ClockChannelSpec {
    Wavelength wavelength{1571.0};
    double pulse_rate_hz = 1e7;
    double launch_power_dbm = -29.0;
    std::vector<std::pair<double, double>> jitter_table; // (received_dbm, jitter_rms_ps)
};

/// Bit error ratio at the given received power. log10(BER) is linear in
/// received power (dBm), anchored at (sensitivity, 1e-9); clamped to
/// [1e-15, 0.5].
double ber_at_power(const DataChannelSpec& channel, double received_dbm);

/// Minimum launch power closing the link: sensitivity + end-to-end loss +
/// dispersion penalty + margin.
double min_launch_power_dbm(const DataChannelSpec& channel, const FiberSpec& fiber,
                            const CwdmGrid& grid, double distance_km, double margin_db);

/// Launch power the channel actually uses at the given length.
double operating_launch_dbm(const DataChannelSpec& channel, const FiberSpec& fiber,
                            const CwdmGrid& grid, double distance_km);

struct JitterResult {
    double jitter_rms_ps = 0.0;
    double received_dbm = 0.0;
    bool clamped = false; // received power fell outside the table hull
};

/// Clock timing jitter at fiber length `distance_km`: received power from
/// the link budget, then piecewise-linear interpolation of the table.
JitterResult clock_jitter_at(const ClockChannelSpec& clock, const FiberSpec& fiber,
                             const CwdmGrid& grid, double distance_km);

/// Interpolate the jitter table directly at a received power.
JitterResult interpolate_jitter(const ClockChannelSpec& clock, double received_dbm);

} // namespace qkdsim
