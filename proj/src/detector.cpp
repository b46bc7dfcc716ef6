#include "qkdsim/detector.hpp"

#include <cmath>
#include <limits>

namespace qkdsim {

namespace {
// FWHM of a Gaussian = 2*sqrt(2*ln 2) * sigma
constexpr double kFwhmToSigma = 2.3548200450309493;
} // namespace

void DetectorSpec::check() const {
    if (!(eta_sync > 0.0 && eta_sync <= 1.0)) {
        throw ConfigError("detector eta_sync must lie in (0, 1]");
    }
    if (!(eta_async >= 0.0 && eta_async < eta_sync)) {
        throw ConfigError("detector eta_async must lie in [0, eta_sync)");
    }
    if (!(active_fwhm_ps > 0.0 && gate_period_ps > 0.0 && active_fwhm_ps < gate_period_ps)) {
        throw ConfigError("detector active window must be positive and shorter than the gate period");
    }
    if (!(dark_per_gate >= 0.0 && dark_per_gate < 1.0)) {
        throw ConfigError("detector dark count probability must lie in [0, 1)");
    }
    if (!(afterpulse_prob >= 0.0 && afterpulse_prob < 1.0)) {
        throw ConfigError("detector afterpulse probability must lie in [0, 1)");
    }
}

double ReceiverSpec::eta_bob() const {
    return detector.eta_sync * db_to_linear(-optical_loss_db);
}

double temporal_rejection_db(const DetectorSpec& detector) {
    if (detector.eta_async <= 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return 10.0 * std::log10(detector.eta_sync / detector.eta_async);
}

double jitter_efficiency_factor(const DetectorSpec& detector, double jitter_rms_ps) {
    if (!(jitter_rms_ps >= 0.0)) {
        throw DomainError("jitter must be nonnegative");
    }
    const double sigma_window = detector.active_fwhm_ps / kFwhmToSigma;
    const double ratio = jitter_rms_ps / sigma_window;
    const double overlap = 1.0 / std::sqrt(1.0 + ratio * ratio);
    const double floor = detector.eta_async / detector.eta_sync;
    return floor + (1.0 - floor) * overlap;
}

} // namespace qkdsim
