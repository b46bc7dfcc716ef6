#include "qkdsim/montecarlo.hpp"

#include <cmath>
#include <random>

namespace qkdsim {

namespace {

// Raw 53-bit uniforms straight off the engine; std distributions are not
// bit-reproducible across standard library implementations.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct PoissonSampler {
    std::vector<double> cdf;

    explicit PoissonSampler(double mu) {
        double p = std::exp(-mu);
        double acc = p;
        cdf.push_back(acc);
        int n = 0;
        while (acc < 1.0 - 1e-12 && n < 200) {
            ++n;
            p *= mu / n;
            acc += p;
            cdf.push_back(acc);
        }
    }

    int sample(double u) const {
        for (std::size_t k = 0; k < cdf.size(); ++k) {
            if (u <= cdf[k]) {
                return static_cast<int>(k);
            }
        }
        return static_cast<int>(cdf.size());
    }
};

} // namespace

double McClassStats::empirical_transmittance() const {
    return pulses == 0 ? 0.0 : static_cast<double>(clicks) / static_cast<double>(pulses);
}

double McClassStats::empirical_qber() const {
    return sifted == 0 ? 0.0 : static_cast<double>(sifted_errors) / static_cast<double>(sifted);
}

double McSessionResult::empirical_qber() const {
    return sifted_bits == 0 ? 0.0
                            : static_cast<double>(sifted_errors) / static_cast<double>(sifted_bits);
}

McSessionResult monte_carlo_session(const DecoyProtocolSpec& protocol,
                                    const ChannelOperatingPoint& point, std::uint64_t n_pulses,
                                    std::uint64_t seed) {
    protocol.check();
    const double survival = point.channel_transmission * point.eta_bob;
    if (!(survival >= 0.0 && survival <= 1.0)) {
        throw DomainError("per-photon survival probability must lie in [0, 1]");
    }

    std::mt19937_64 rng(seed);

    std::vector<double> class_cdf;
    double acc = 0.0;
    for (const auto& cls : protocol.intensities) {
        acc += cls.probability;
        class_cdf.push_back(acc);
    }
    class_cdf.back() = 1.0;

    std::vector<PoissonSampler> poisson;
    poisson.reserve(protocol.intensities.size());
    for (const auto& cls : protocol.intensities) {
        poisson.emplace_back(cls.mu);
    }

    McSessionResult result;
    result.per_class.resize(protocol.intensities.size());
    result.pulses = n_pulses;

    std::uint64_t base_clicks = 0; // clicks excluding afterpulses, drives the afterpulse rate

    auto record_event = [&](McClassStats& stats, double error_probability) {
        stats.clicks += 1;
        if (uniform01(rng) < protocol.sifting_factor) {
            stats.sifted += 1;
            result.sifted_bits += 1;
            if (uniform01(rng) < error_probability) {
                stats.sifted_errors += 1;
                result.sifted_errors += 1;
            }
        }
    };

    for (std::uint64_t pulse = 0; pulse < n_pulses; ++pulse) {
        const double u_class = uniform01(rng);
        std::size_t cls = 0;
        while (cls + 1 < class_cdf.size() && u_class > class_cdf[cls]) {
            ++cls;
        }
        McClassStats& stats = result.per_class[cls];
        stats.pulses += 1;

        const int photons = poisson[cls].sample(uniform01(rng));
        int survivors = 0;
        for (int k = 0; k < photons; ++k) {
            if (uniform01(rng) < survival) {
                ++survivors;
            }
        }

        std::uint64_t base_this_pulse = static_cast<std::uint64_t>(survivors);
        for (int k = 0; k < survivors; ++k) {
            record_event(stats, protocol.e_opt);
        }
        if (point.p_dark > 0.0 && uniform01(rng) < point.p_dark) {
            base_this_pulse += 1;
            record_event(stats, 0.5);
        }
        if (point.p_raman > 0.0 && uniform01(rng) < point.p_raman) {
            base_this_pulse += 1;
            record_event(stats, 0.5);
        }
        if (point.p_afterpulse > 0.0 && pulse > 0) {
            const double base_rate =
                static_cast<double>(base_clicks) / static_cast<double>(pulse);
            if (uniform01(rng) < point.p_afterpulse * base_rate) {
                record_event(stats, 0.5);
            }
        }
        base_clicks += base_this_pulse;
    }
    return result;
}

} // namespace qkdsim
