#include <doctest.h>

#include <cmath>

#include "qkdsim/montecarlo.hpp"

using namespace qkdsim;

namespace {

DecoyProtocolSpec paper_protocol() {
    DecoyProtocolSpec protocol;
    protocol.intensities = {{0.5, 0.988}, {0.1, 0.008}, {0.0007, 0.004}};
    protocol.signal_index = 0;
    protocol.e_opt = 0.023;
    return protocol;
}

} // namespace

TEST_CASE("same seed is bit-identical") {
    const DecoyProtocolSpec protocol = paper_protocol();
    ChannelOperatingPoint point;
    point.channel_transmission = 0.1;
    point.eta_bob = 0.06;
    point.p_dark = 2e-5;
    point.p_raman = 1e-5;
    point.p_afterpulse = 0.01;

    const McSessionResult a = monte_carlo_session(protocol, point, 200000, 42);
    const McSessionResult b = monte_carlo_session(protocol, point, 200000, 42);
    CHECK(a.sifted_bits == b.sifted_bits);
    CHECK(a.sifted_errors == b.sifted_errors);
    for (std::size_t i = 0; i < a.per_class.size(); ++i) {
        CHECK(a.per_class[i].clicks == b.per_class[i].clicks);
        CHECK(a.per_class[i].pulses == b.per_class[i].pulses);
    }

    const McSessionResult c = monte_carlo_session(protocol, point, 200000, 43);
    CHECK(a.per_class[0].clicks != c.per_class[0].clicks);
}

TEST_CASE("silent channel produces zero clicks") {
    DecoyProtocolSpec protocol;
    protocol.intensities = {{0.0, 0.5}, {0.0001, 0.25}, {0.0002, 0.25}};
    protocol.signal_index = 2;
    protocol.e_opt = 0.0;
    ChannelOperatingPoint point;
    point.channel_transmission = 0.0;
    point.eta_bob = 0.0;
    const McSessionResult result = monte_carlo_session(protocol, point, 100000, 7);
    CHECK(result.sifted_bits == 0);
    for (const auto& stats : result.per_class) {
        CHECK(stats.clicks == 0);
    }
}

TEST_CASE("empirical statistics agree with the detection model at 3 sigma") {
    const DecoyProtocolSpec protocol = paper_protocol();
    ChannelOperatingPoint point;
    point.channel_transmission = 0.0158;
    point.eta_bob = 0.04;
    point.p_dark = 2.5e-5;
    point.p_raman = 2.6e-5;
    point.p_afterpulse = 0.01;

    const std::uint64_t n_pulses = 2000000;
    const McSessionResult mc = monte_carlo_session(protocol, point, n_pulses, 1234);
    const LinkObservables model = transmittances(protocol, point);

    for (std::size_t i = 0; i < protocol.intensities.size(); ++i) {
        const auto& stats = mc.per_class[i];
        const double t_model = model.transmittance[i];
        const double sigma =
            std::sqrt(t_model * (1.0 - t_model) / static_cast<double>(stats.pulses));
        CHECK(std::abs(stats.empirical_transmittance() - t_model) < 3.0 * sigma);

        const double e_model = model.qber_per_class[i];
        if (stats.sifted > 100) {
            const double e_sigma =
                std::sqrt(e_model * (1.0 - e_model) / static_cast<double>(stats.sifted));
            CHECK(std::abs(stats.empirical_qber() - e_model) < 3.0 * e_sigma);
        }
    }
}
