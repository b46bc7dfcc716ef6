#include "qkdsim/keyrate.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace qkdsim {

void DecoyProtocolSpec::check() const {
    if (intensities.size() < 2) {
        throw ConfigError("protocol needs at least two intensity classes");
    }
    double total = 0.0;
    std::set<double> seen;
    for (const auto& cls : intensities) {
        if (!(cls.mu >= 0.0)) {
            throw ConfigError("intensity mu must be nonnegative");
        }
        if (!(cls.probability >= 0.0 && cls.probability <= 1.0)) {
            throw ConfigError("intensity probability must lie in [0, 1]");
        }
        if (!seen.insert(cls.mu).second) {
            throw ConfigError("intensity values must be distinct");
        }
        total += cls.probability;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw ConfigError("intensity probabilities must sum to 1");
    }
    if (signal_index >= intensities.size()) {
        throw ConfigError("signal class index out of range");
    }
    if (!(clock_rate_hz > 0.0)) {
        throw ConfigError("clock rate must be positive");
    }
    if (!(sifting_factor > 0.0 && sifting_factor <= 1.0)) {
        throw ConfigError("sifting factor must lie in (0, 1]");
    }
    if (!(f_ec >= 1.0)) {
        throw ConfigError("error-correction efficiency must be >= 1");
    }
    if (!(e_opt >= 0.0 && e_opt < 0.5)) {
        throw ConfigError("optical error rate must lie in [0, 0.5)");
    }
}

double binary_entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw DomainError("binary entropy argument must lie in [0, 1]");
    }
    double h = 0.0;
    if (x > 0.0) h -= x * std::log2(x);
    if (x < 1.0) h -= (1.0 - x) * std::log2(1.0 - x);
    return h;
}

double noise_qber_component(double mu, double channel_transmission, double eta_bob,
                            double p_dark, double p_raman) {
    const double noise = p_dark + p_raman;
    const double denominator = mu * channel_transmission * eta_bob + noise;
    if (!(denominator > 0.0)) {
        throw DomainError("noise QBER denominator must be positive");
    }
    return 0.5 * noise / denominator;
}

double total_qber(double e_opt, double p_afterpulse, double e_noise) {
    return std::clamp(e_opt + 0.5 * p_afterpulse + e_noise, 0.0, 0.5);
}

LinkObservables transmittances(const DecoyProtocolSpec& protocol,
                               const ChannelOperatingPoint& point) {
    const double eta = point.channel_transmission * point.eta_bob;
    const double noise = point.p_dark + point.p_raman;

    LinkObservables link;
    link.p_dark = point.p_dark;
    link.p_raman = point.p_raman;

    double overall = noise;
    for (const auto& cls : protocol.intensities) {
        overall += cls.probability * cls.mu * eta;
    }
    link.overall_transmittance = overall;

    const double afterpulse = overall * point.p_afterpulse;
    link.transmittance.reserve(protocol.intensities.size());
    link.qber_per_class.reserve(protocol.intensities.size());
    for (const auto& cls : protocol.intensities) {
        const double t_i = cls.mu * eta + noise + afterpulse;
        link.transmittance.push_back(t_i);
        // Event accounting: photon detections err with e_opt, noise and
        // afterpulse detections are uncorrelated with the bit value.
        const double errors = protocol.e_opt * cls.mu * eta + 0.5 * (noise + afterpulse);
        link.qber_per_class.push_back(t_i > 0.0 ? std::min(0.5, errors / t_i) : 0.0);
    }
    return link;
}

double secure_rate_bps(const SessionCounts& counts, double f_ec) {
    if (!(counts.duration_s > 0.0)) {
        throw DomainError("session duration must be positive");
    }
    const double rate = (counts.single_photon_bits * (1.0 - binary_entropy(counts.single_photon_qber)) -
                         counts.sifted_bits * f_ec * binary_entropy(counts.qber) +
                         counts.zero_photon_bits) /
                        counts.duration_s;
    return rate > 0.0 ? rate : 0.0;
}

double sifted_rate_bps(const DecoyProtocolSpec& protocol, const LinkObservables& observables) {
    double mean_transmittance = 0.0;
    for (std::size_t i = 0; i < protocol.intensities.size(); ++i) {
        mean_transmittance += protocol.intensities[i].probability * observables.transmittance[i];
    }
    return protocol.clock_rate_hz * protocol.sifting_factor * mean_transmittance;
}

double poisson_pmf(int n, double mu) {
    if (n < 0) return 0.0;
    if (mu == 0.0) return n == 0 ? 1.0 : 0.0;
    double log_p = -mu + n * std::log(mu);
    for (int k = 2; k <= n; ++k) {
        log_p -= std::log(static_cast<double>(k));
    }
    return std::exp(log_p);
}

} // namespace qkdsim
