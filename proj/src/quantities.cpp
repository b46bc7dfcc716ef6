#include "qkdsim/quantities.hpp"

#include <cmath>

namespace qkdsim {

Wavelength Wavelength::nanometers(double value_nm) {
    if (!(value_nm >= 900.0 && value_nm <= 1700.0)) {
        throw DomainError("wavelength " + std::to_string(value_nm) +
                          " nm outside supported range [900, 1700] nm");
    }
    return Wavelength{value_nm};
}

OpticalPower OpticalPower::from_watts(double w) {
    if (!(w >= 0.0)) {
        throw DomainError("optical power must be nonnegative, got " + std::to_string(w));
    }
    return OpticalPower{w};
}

OpticalPower OpticalPower::from_dbm(double dbm) {
    return OpticalPower{db_to_linear(dbm) * 1e-3};
}

double OpticalPower::dbm() const {
    if (!(watts > 0.0)) {
        throw DomainError("dBm representation requires strictly positive power");
    }
    return linear_to_db(watts / 1e-3);
}

PhotonFlux PhotonFlux::of(double photons_per_pulse, double pulse_rate_hz) {
    if (!(photons_per_pulse >= 0.0)) {
        throw DomainError("photons per pulse must be nonnegative");
    }
    if (!(pulse_rate_hz > 0.0)) {
        throw DomainError("pulse rate must be positive");
    }
    return PhotonFlux{photons_per_pulse, pulse_rate_hz};
}

double db_to_linear(double db) {
    return std::pow(10.0, db / 10.0);
}

double linear_to_db(double linear) {
    if (!(linear > 0.0)) {
        throw DomainError("linear_to_db requires a strictly positive ratio");
    }
    return 10.0 * std::log10(linear);
}

double photon_energy_joules(Wavelength lambda) {
    return constants::planck_J_s * constants::speed_of_light_m_s / (lambda.nm * 1e-9);
}

OpticalPower flux_to_power(PhotonFlux flux, Wavelength lambda) {
    return OpticalPower{flux.photons_per_pulse * flux.pulse_rate_hz *
                        photon_energy_joules(lambda)};
}

} // namespace qkdsim
