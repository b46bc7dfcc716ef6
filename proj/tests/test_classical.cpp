#include <doctest.h>

#include "qkdsim/classical.hpp"

using namespace qkdsim;

namespace {

CwdmGrid data_grid(double insertion_db) {
    CwdmGrid grid;
    grid.passband_centers = {Wavelength{1551.0}, Wavelength{1571.0}, Wavelength{1591.0},
                             Wavelength{1611.0}};
    grid.passband_width_nm = 13.0;
    grid.insertion_loss_db = {insertion_db, insertion_db, insertion_db, insertion_db};
    return grid;
}

} // namespace

TEST_CASE("bit error ratio model") {
    DataChannelSpec channel;
    channel.sensitivity_dbm = -36.8;
    channel.ber_slope_decades_per_db = -1.5;

    CHECK(ber_at_power(channel, -36.8) == doctest::Approx(1e-9).epsilon(1e-12));
    CHECK(ber_at_power(channel, -38.8) == doctest::Approx(1e-6).epsilon(1e-9));
    CHECK(ber_at_power(channel, 0.0) == doctest::Approx(1e-15)); // floor clamp
    CHECK(ber_at_power(channel, -80.0) == doctest::Approx(0.5)); // ceiling clamp
}

TEST_CASE("minimum launch power") {
    DataChannelSpec channel;
    channel.wavelength = Wavelength{1611.0};
    channel.sensitivity_dbm = -36.8;
    channel.bit_rate_bps = 1.25e9;

    SUBCASE("80 km link with 0.2 dB/km and no dispersion") {
        FiberSpec fiber;
        fiber.attenuation_db_per_km = {{1551.0, 0.20}, {1611.0, 0.20}};
        fiber.dispersion_ps_per_nm_km = 0.0;
        fiber.connector_loss_db = 0.6;
        // Path: 16 dB fiber + 1.5 dB CWDM pair + 0.6 dB connectors = 18.1 dB.
        CHECK(min_launch_power_dbm(channel, fiber, data_grid(0.75), 80.0, 0.0) ==
              doctest::Approx(-18.7).epsilon(1e-9));
        // Within half a dB of the -18.5 dBm operating choice for this span.
        CHECK(std::abs(min_launch_power_dbm(channel, fiber, data_grid(0.75), 80.0, 0.0) -
                       (-18.5)) < 0.5);
        CHECK(min_launch_power_dbm(channel, fiber, data_grid(0.75), 80.0, 3.0) ==
              doctest::Approx(-15.7).epsilon(1e-9));
    }

    SUBCASE("zero-length lossless link returns the sensitivity") {
        FiberSpec fiber;
        fiber.attenuation_db_per_km = {{1551.0, 0.20}, {1611.0, 0.20}};
        fiber.dispersion_ps_per_nm_km = 0.0;
        fiber.connector_loss_db = 0.0;
        CHECK(min_launch_power_dbm(channel, fiber, data_grid(0.0), 0.0, 0.0) ==
              doctest::Approx(-36.8));
    }

    SUBCASE("monotone in length and margin") {
        FiberSpec fiber;
        fiber.attenuation_db_per_km = {{1551.0, 0.20}, {1611.0, 0.24}};
        fiber.dispersion_ps_per_nm_km = 4.0;
        fiber.connector_loss_db = 0.6;
        const CwdmGrid grid = data_grid(0.75);
        double previous = -1e9;
        for (double km = 0.0; km <= 100.0; km += 10.0) {
            const double launch = min_launch_power_dbm(channel, fiber, grid, km, 0.0);
            CHECK(launch > previous);
            previous = launch;
        }
        CHECK(min_launch_power_dbm(channel, fiber, grid, 50.0, 2.0) ==
              doctest::Approx(min_launch_power_dbm(channel, fiber, grid, 50.0, 0.0) + 2.0));
    }
}

TEST_CASE("clock jitter interpolation") {
    ClockChannelSpec clock;
    clock.jitter_table = {{-50.0, 15.5}, {-48.0, 11.0}, {-47.6, 10.0}, {-44.0, 6.8}};

    SUBCASE("exact node") {
        CHECK(interpolate_jitter(clock, -47.6).jitter_rms_ps == doctest::Approx(10.0));
        CHECK_FALSE(interpolate_jitter(clock, -47.6).clamped);
    }
    SUBCASE("between nodes") {
        const JitterResult mid = interpolate_jitter(clock, -49.0);
        CHECK(mid.jitter_rms_ps == doctest::Approx(15.5 + 0.5 * (11.0 - 15.5)));
    }
    SUBCASE("clamped outside the hull") {
        CHECK(interpolate_jitter(clock, -60.0).clamped);
        CHECK(interpolate_jitter(clock, -60.0).jitter_rms_ps == doctest::Approx(15.5));
        CHECK(interpolate_jitter(clock, -10.0).clamped);
        CHECK(interpolate_jitter(clock, -10.0).jitter_rms_ps == doctest::Approx(6.8));
    }
    SUBCASE("single entry applies everywhere") {
        ClockChannelSpec single;
        single.jitter_table = {{-47.6, 10.0}};
        CHECK(interpolate_jitter(single, -80.0).jitter_rms_ps == doctest::Approx(10.0));
        CHECK(interpolate_jitter(single, -10.0).jitter_rms_ps == doctest::Approx(10.0));
    }
    SUBCASE("empty table is a configuration error") {
        ClockChannelSpec empty;
        CHECK_THROWS_AS(interpolate_jitter(empty, -47.6), ConfigError);
    }
    SUBCASE("higher received power never increases jitter") {
        double previous = 1e9;
        for (double dbm = -52.0; dbm <= -40.0; dbm += 0.25) {
            const double jitter = interpolate_jitter(clock, dbm).jitter_rms_ps;
            CHECK(jitter <= previous + 1e-12);
            previous = jitter;
        }
    }
}

TEST_CASE("clock jitter from the link budget") {
    ClockChannelSpec clock;
    clock.wavelength = Wavelength{1571.0};
    clock.launch_power_dbm = -29.0;
    clock.jitter_table = {{-50.0, 15.5}, {-47.6, 10.0}, {-44.0, 6.8}};

    FiberSpec fiber;
    fiber.attenuation_db_per_km = {{1551.0, 0.20}, {1571.0, 0.21}, {1611.0, 0.24}};
    fiber.connector_loss_db = 0.6;
    CwdmGrid grid = data_grid(0.6);

    // 80 km: received = -29 - (16.8 + 1.2 + 0.6) = -47.6 dBm.
    const JitterResult at_80 = clock_jitter_at(clock, fiber, grid, 80.0);
    CHECK(at_80.received_dbm == doctest::Approx(-47.6).epsilon(1e-9));
    CHECK(at_80.jitter_rms_ps == doctest::Approx(10.0).epsilon(1e-9));
}
