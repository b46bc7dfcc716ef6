#include "qkdsim/classical.hpp"

#include <algorithm>
#include <cmath>

namespace qkdsim {

namespace {
constexpr double kBerAnchor = 1e-9;
constexpr double kBerFloor = 1e-15;
constexpr double kBerCeiling = 0.5;
} // namespace

double ber_at_power(const DataChannelSpec& channel, double received_dbm) {
    const double decades = channel.ber_slope_decades_per_db * (received_dbm - channel.sensitivity_dbm);
    const double ber = kBerAnchor * std::pow(10.0, decades);
    return std::clamp(ber, kBerFloor, kBerCeiling);
}

double min_launch_power_dbm(const DataChannelSpec& channel, const FiberSpec& fiber,
                            const CwdmGrid& grid, double distance_km, double margin_db) {
    const double path_loss = end_to_end_loss_db(fiber, grid, channel.wavelength, distance_km);
    const double dispersion = dispersion_penalty_db(fiber, channel.bit_rate_bps, distance_km);
    return channel.sensitivity_dbm + path_loss + dispersion + margin_db;
}

double operating_launch_dbm(const DataChannelSpec& channel, const FiberSpec& fiber,
                            const CwdmGrid& grid, double distance_km) {
    if (!channel.launch_auto) {
        return channel.launch_power_dbm;
    }
    return min_launch_power_dbm(channel, fiber, grid, distance_km, channel.launch_margin_db);
}

JitterResult interpolate_jitter(const ClockChannelSpec& clock, double received_dbm) {
    const auto& table = clock.jitter_table;
    if (table.empty()) {
        throw ConfigError("clock jitter table is empty");
    }
    JitterResult result;
    result.received_dbm = received_dbm;
    if (received_dbm <= table.front().first) {
        result.jitter_rms_ps = table.front().second;
        result.clamped = received_dbm < table.front().first;
        return result;
    }
    if (received_dbm >= table.back().first) {
        result.jitter_rms_ps = table.back().second;
        result.clamped = received_dbm > table.back().first;
        return result;
    }
    for (std::size_t i = 1; i < table.size(); ++i) {
        if (received_dbm <= table[i].first) {
            const auto& lo = table[i - 1];
            const auto& hi = table[i];
            const double t = (received_dbm - lo.first) / (hi.first - lo.first);
            result.jitter_rms_ps = lo.second + t * (hi.second - lo.second);
            return result;
        }
    }
    result.jitter_rms_ps = table.back().second; // unreachable
    return result;
}

JitterResult clock_jitter_at(const ClockChannelSpec& clock, const FiberSpec& fiber,
                             const CwdmGrid& grid, double distance_km) {
    const double loss = end_to_end_loss_db(fiber, grid, clock.wavelength, distance_km);
    return interpolate_jitter(clock, clock.launch_power_dbm - loss);
}

} // namespace qkdsim
