#include "qkdsim/fiber.hpp"

#include <cmath>

namespace qkdsim {

namespace {
constexpr double kDispersionAnchorDb = 1.0;
constexpr double kDispersionAnchorPsNmKm = 4.0;
constexpr double kDispersionAnchorKm = 90.0;
constexpr double kDispersionAnchorBps = 1.25e9;
} // namespace

int CwdmGrid::passband_index(Wavelength lambda) const {
    for (std::size_t i = 0; i < passband_centers.size(); ++i) {
        if (std::abs(passband_centers[i].nm - lambda.nm) <= passband_width_nm / 2.0) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

double CwdmGrid::insertion_loss_for(Wavelength lambda) const {
    const int idx = passband_index(lambda);
    if (idx < 0) {
        throw PlanningError("wavelength " + std::to_string(lambda.nm) +
                            " nm is not assigned to any CWDM passband");
    }
    if (static_cast<std::size_t>(idx) >= insertion_loss_db.size()) {
        throw ConfigError("CWDM grid has no insertion loss entry for passband " +
                          std::to_string(idx));
    }
    return insertion_loss_db[static_cast<std::size_t>(idx)];
}

double attenuation_db_per_km(const FiberSpec& fiber, Wavelength lambda) {
    const auto& table = fiber.attenuation_db_per_km;
    if (table.empty()) {
        throw ConfigError("fiber attenuation table is empty");
    }
    const auto it = table.lower_bound(lambda.nm);
    if (it != table.end() && it->first == lambda.nm) {
        return it->second;
    }
    if (it == table.begin() || it == table.end()) {
        throw ConfigError("wavelength " + std::to_string(lambda.nm) +
                          " nm lies outside the attenuation table hull");
    }
    const auto lo = std::prev(it);
    const double t = (lambda.nm - lo->first) / (it->first - lo->first);
    return lo->second + t * (it->second - lo->second);
}

double attenuation_linear(const FiberSpec& fiber, Wavelength lambda, double distance_km) {
    if (!(distance_km >= 0.0)) {
        throw DomainError("fiber distance must be nonnegative");
    }
    const double a = attenuation_db_per_km(fiber, lambda);
    return db_to_linear(-a * distance_km);
}

double dispersion_penalty_db(const FiberSpec& fiber, double bit_rate_bps, double distance_km) {
    if (!(bit_rate_bps > 0.0)) {
        throw DomainError("bit rate must be positive");
    }
    if (!(distance_km >= 0.0)) {
        throw DomainError("fiber distance must be nonnegative");
    }
    const double rate_scaling = (bit_rate_bps / kDispersionAnchorBps) *
                                (bit_rate_bps / kDispersionAnchorBps);
    return kDispersionAnchorDb *
           (std::abs(fiber.dispersion_ps_per_nm_km) * distance_km) /
           (kDispersionAnchorPsNmKm * kDispersionAnchorKm) * rate_scaling;
}

double end_to_end_loss_db(const FiberSpec& fiber, const CwdmGrid& grid, Wavelength channel,
                          double distance_km, bool is_quantum,
                          const QuantumChannelSpec* quantum) {
    double loss = attenuation_db_per_km(fiber, channel) * distance_km;
    loss += 2.0 * grid.insertion_loss_for(channel); // mux + demux
    loss += fiber.connector_loss_db;
    if (is_quantum && quantum != nullptr) {
        loss += quantum->nbf_insertion_loss_db;
    }
    return loss;
}

} // namespace qkdsim
