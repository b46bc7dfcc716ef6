#pragma once

#include <stdexcept>
#include <string>

namespace qkdsim {

/// Thrown when a value violates a physical-domain precondition
/// (negative power, wavelength outside the supported window, ...).
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Thrown when a scenario or fixture is internally inconsistent.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when no feasible channel assignment exists.
class PlanningError : public std::runtime_error {
public:
    explicit PlanningError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when the decoy-state estimator cannot reconcile the observations.
class EstimationError : public std::runtime_error {
public:
    explicit EstimationError(const std::string& what) : std::runtime_error(what) {}
};

namespace constants {
// CODATA 2018. All physical constants used by the library live here.
inline constexpr double planck_J_s = 6.62607015e-34;
inline constexpr double speed_of_light_m_s = 2.99792458e8;
} // namespace constants

// The library computes in watts internally; decibel values appear only at
// I/O boundaries (configs, reports).

/// Wavelength in nanometers, restricted to the 900-1700 nm window the
/// fixture data is valid for.
struct Wavelength {
    double nm = 0.0;

    static Wavelength nanometers(double value_nm);
    bool operator==(const Wavelength&) const = default;
};

/// Optical power in watts. Nonnegative; the dBm representation exists only
/// for strictly positive powers.
struct OpticalPower {
    double watts = 0.0;

    static OpticalPower from_watts(double w);
    static OpticalPower from_dbm(double dbm);
    double dbm() const;
};

/// Mean photon number per pulse together with the pulse rate.
struct PhotonFlux {
    double photons_per_pulse = 0.0;
    double pulse_rate_hz = 0.0;

    static PhotonFlux of(double photons_per_pulse, double pulse_rate_hz);
};

/// 10^(db/10)
double db_to_linear(double db);
/// Inverse of db_to_linear; requires a strictly positive ratio.
double linear_to_db(double linear);

/// Photon energy h*c/lambda in joules.
double photon_energy_joules(Wavelength lambda);

/// Average optical power carried by a pulsed source of the given flux.
OpticalPower flux_to_power(PhotonFlux flux, Wavelength lambda);

} // namespace qkdsim
