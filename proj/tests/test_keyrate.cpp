#include <doctest.h>

#include <random>

#include "qkdsim/keyrate.hpp"

using namespace qkdsim;

namespace {

DecoyProtocolSpec paper_protocol() {
    DecoyProtocolSpec protocol;
    protocol.intensities = {{0.5, 0.988}, {0.1, 0.008}, {0.0007, 0.004}};
    protocol.signal_index = 0;
    protocol.clock_rate_hz = 1e9;
    protocol.sifting_factor = 0.5;
    protocol.f_ec = 1.1;
    protocol.e_opt = 0.023;
    return protocol;
}

} // namespace

TEST_CASE("binary entropy") {
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(binary_entropy(0.11) == doctest::Approx(0.4999142).epsilon(1e-5));
    CHECK_THROWS_AS(binary_entropy(-0.01), DomainError);
    CHECK_THROWS_AS(binary_entropy(1.01), DomainError);
}

TEST_CASE("noise QBER component") {
    CHECK(noise_qber_component(0.5, 0.1, 0.1, 0.0, 0.0) == 0.0);
    // Pure-noise limit: no signal leaves only random clicks.
    CHECK(noise_qber_component(0.5, 0.0, 0.1, 1e-5, 1e-5) == doctest::Approx(0.5));
    // The component is the noise fraction halved.
    const double e_n = noise_qber_component(0.5, 0.015849, 0.1, 2e-5, 2e-5);
    const double signal = 0.5 * 0.015849 * 0.1;
    CHECK(e_n == doctest::Approx(0.5 * 4e-5 / (signal + 4e-5)).epsilon(1e-12));
    CHECK_THROWS_AS(noise_qber_component(0.0, 0.0, 0.0, 0.0, 0.0), DomainError);
}

TEST_CASE("total QBER") {
    CHECK(total_qber(0.023, 0.01, 0.0) == doctest::Approx(0.028).epsilon(1e-12));
    CHECK(total_qber(0.0, 0.0, 0.0) == 0.0);
    CHECK(total_qber(0.4, 0.3, 0.4) == 0.5); // clamped
}

TEST_CASE("transmittances") {
    SUBCASE("no afterpulsing and a single class collapses T_i to T") {
        DecoyProtocolSpec protocol;
        protocol.intensities = {{0.5, 1.0}};
        protocol.e_opt = 0.0;
        ChannelOperatingPoint point;
        point.channel_transmission = 0.1;
        point.eta_bob = 0.1;
        point.p_dark = 1e-5;
        point.p_afterpulse = 0.0;
        const LinkObservables link = transmittances(protocol, point);
        CHECK(link.transmittance[0] == doctest::Approx(link.overall_transmittance).epsilon(1e-12));
    }

    SUBCASE("zero length, zero noise signal class") {
        DecoyProtocolSpec protocol = paper_protocol();
        ChannelOperatingPoint point;
        point.channel_transmission = 1.0;
        point.eta_bob = 0.1;
        point.p_afterpulse = 0.01;
        const LinkObservables link = transmittances(protocol, point);
        CHECK(link.transmittance[0] ==
              doctest::Approx(0.05 + link.overall_transmittance * 0.01).epsilon(1e-12));
    }

    SUBCASE("per-class error rates follow the event model") {
        DecoyProtocolSpec protocol = paper_protocol();
        ChannelOperatingPoint point;
        point.channel_transmission = 0.1;
        point.eta_bob = 0.04;
        point.p_dark = 2e-5;
        point.p_raman = 1e-5;
        point.p_afterpulse = 0.01;
        const LinkObservables link = transmittances(protocol, point);
        for (std::size_t i = 0; i < protocol.intensities.size(); ++i) {
            const double eta = point.channel_transmission * point.eta_bob;
            const double noise = point.p_dark + point.p_raman +
                                 link.overall_transmittance * point.p_afterpulse;
            const double expected =
                (protocol.e_opt * protocol.intensities[i].mu * eta + 0.5 * noise) /
                link.transmittance[i];
            CHECK(link.qber_per_class[i] == doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("secure rate") {
    SUBCASE("lossless limit gives Q/t") {
        SessionCounts counts;
        counts.sifted_bits = 1e6;
        counts.single_photon_bits = 1e6;
        counts.zero_photon_bits = 0.0;
        counts.qber = 0.0;
        counts.single_photon_qber = 0.0;
        counts.duration_s = 1.0;
        CHECK(secure_rate_bps(counts, 1.1) == doctest::Approx(1e6));
    }
    SUBCASE("e1 = 0.5 zeroes the single-photon term") {
        SessionCounts counts;
        counts.sifted_bits = 0.0;
        counts.single_photon_bits = 5e5;
        counts.zero_photon_bits = 123.0;
        counts.qber = 0.0;
        counts.single_photon_qber = 0.5;
        CHECK(secure_rate_bps(counts, 1.1) == doctest::Approx(123.0));
    }
    SUBCASE("negative rates clamp to zero") {
        SessionCounts counts;
        counts.sifted_bits = 1e6;
        counts.single_photon_bits = 0.0;
        counts.zero_photon_bits = 0.0;
        counts.qber = 0.12;
        counts.single_photon_qber = 0.5;
        CHECK(secure_rate_bps(counts, 1.1) == 0.0);
    }
}

TEST_CASE("secure rate is nonincreasing in the error rates") {
    std::mt19937_64 rng(31);
    auto u01 = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    for (int i = 0; i < 200; ++i) {
        SessionCounts counts;
        counts.sifted_bits = 1e6;
        counts.single_photon_bits = 4e5 + 2e5 * u01();
        counts.zero_photon_bits = 1e3 * u01();
        counts.qber = 0.25 * u01();
        counts.single_photon_qber = 0.25 * u01();
        const double base = secure_rate_bps(counts, 1.1);

        SessionCounts worse_e = counts;
        worse_e.qber = counts.qber + (0.40 - counts.qber) * u01();
        CHECK(secure_rate_bps(worse_e, 1.1) <= base + 1e-9);

        SessionCounts worse_e1 = counts;
        worse_e1.single_photon_qber =
            counts.single_photon_qber + (0.5 - counts.single_photon_qber) * u01();
        CHECK(secure_rate_bps(worse_e1, 1.1) <= base + 1e-9);
    }
}

TEST_CASE("sifted rate") {
    DecoyProtocolSpec protocol = paper_protocol();
    ChannelOperatingPoint point;
    point.channel_transmission = 0.1;
    point.eta_bob = 0.05;
    point.p_dark = 1e-5;
    point.p_afterpulse = 0.01;
    const LinkObservables link = transmittances(protocol, point);
    const double rate = sifted_rate_bps(protocol, link);

    SUBCASE("doubling the clock doubles the rate") {
        DecoyProtocolSpec faster = protocol;
        faster.clock_rate_hz *= 2.0;
        CHECK(sifted_rate_bps(faster, link) == doctest::Approx(2.0 * rate).epsilon(1e-12));
    }
    SUBCASE("zero transmittance gives zero") {
        LinkObservables dead;
        dead.transmittance = {0.0, 0.0, 0.0};
        dead.qber_per_class = {0.0, 0.0, 0.0};
        CHECK(sifted_rate_bps(protocol, dead) == 0.0);
    }
}

TEST_CASE("protocol invariants") {
    DecoyProtocolSpec protocol = paper_protocol();
    CHECK_NOTHROW(protocol.check());

    DecoyProtocolSpec bad_sum = protocol;
    bad_sum.intensities[0].probability = 0.9;
    CHECK_THROWS_AS(bad_sum.check(), ConfigError);

    DecoyProtocolSpec duplicate_mu = protocol;
    duplicate_mu.intensities[1].mu = 0.5;
    CHECK_THROWS_AS(duplicate_mu.check(), ConfigError);
}

TEST_CASE("poisson pmf") {
    CHECK(poisson_pmf(0, 0.5) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
    CHECK(poisson_pmf(1, 0.5) == doctest::Approx(0.5 * std::exp(-0.5)).epsilon(1e-12));
    CHECK(poisson_pmf(0, 0.0) == 1.0);
    CHECK(poisson_pmf(3, 0.0) == 0.0);
    double total = 0.0;
    for (int n = 0; n <= 60; ++n) total += poisson_pmf(n, 2.5);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}
