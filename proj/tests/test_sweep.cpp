#include <doctest.h>

#include <string>

#include "qkdsim/sweep.hpp"

using namespace qkdsim;

TEST_CASE("sweep CSV schema and determinism") {
    Scenario scenario = default_scenario();
    scenario.sweep = SweepRange{0.0, 30.0, 10.0};

    const std::string first = sweep_csv(run_sweep(scenario));
    const std::string second = sweep_csv(run_sweep(scenario));
    CHECK(first == second);

    CHECK(first.rfind("length_km,raman_fwd_w,raman_bwd_w,raman_after_filters_w,p_r,qber,"
                      "qber_floor,qber_dark,qber_raman,sifted_bps,secure_bps,"
                      "tolerance_margin_db\n",
                      0) == 0);
    // Header plus one row per point.
    CHECK(std::count(first.begin(), first.end(), '\n') == 5);
}

TEST_CASE("empty sweep range renders a header-only CSV") {
    Scenario scenario = default_scenario();
    scenario.sweep = SweepRange{10.0, 5.0, 5.0};
    const std::string csv = sweep_csv(run_sweep(scenario));
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1);
}

TEST_CASE("rows are ordered by length with sensible physics") {
    Scenario scenario = default_scenario();
    scenario.sweep = SweepRange{0.0, 100.0, 5.0};
    const auto rows = run_sweep(scenario);
    REQUIRE(rows.size() == 21);

    double previous_length = -1.0;
    double previous_sifted = 1e18;
    for (const auto& row : rows) {
        CHECK(row.length_km > previous_length);
        previous_length = row.length_km;
        CHECK(row.rates.sifted_bps < previous_sifted); // loss always wins
        previous_sifted = row.rates.sifted_bps;
        CHECK(row.rates.secure_bps <= row.rates.sifted_bps);
        CHECK(row.rates.qber >= row.rates.qber_floor);
        CHECK(row.raman_after_filters_w <=
              row.derivation.budget.raman_power_w + 1e-30);
        CHECK(row.rates.qber_dark + row.rates.qber_raman ==
              doctest::Approx(row.rates.qber - row.rates.qber_floor).epsilon(1e-9));
    }

    // No scatter has built up at zero length.
    CHECK(rows.front().raman_fwd_w == 0.0);
    CHECK(rows.front().raman_bwd_w == 0.0);

    // Estimated single- and zero-photon bits never exceed the sifted total.
    for (const auto& row : rows) {
        CHECK(row.counts.single_photon_bits + row.counts.zero_photon_bits <=
              row.counts.sifted_bits + 1e-6);
    }
}

TEST_CASE("secure rate dies between 90 and 100 km") {
    Scenario scenario = default_scenario();
    scenario.sweep = SweepRange{90.0, 100.0, 5.0};
    const auto rows = run_sweep(scenario);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].rates.secure_bps > 0.0);  // 90 km
    CHECK(rows[2].rates.secure_bps == 0.0); // 100 km
    CHECK(rows[2].rates.qber > 0.10);       // past the 10% threshold
}

TEST_CASE("clock launch sits well below the data lasers at the reference span") {
    const Scenario scenario = default_scenario();
    const double reference_km = 80.0;
    const double alice = operating_launch_dbm(scenario.alice_data, scenario.fiber, scenario.grid,
                                              reference_km);
    const double bob = operating_launch_dbm(scenario.bob_data, scenario.fiber, scenario.grid,
                                            reference_km);
    CHECK(scenario.clock.launch_power_dbm <= alice - 14.0);
    CHECK(scenario.clock.launch_power_dbm <= bob - 14.0);
}

TEST_CASE("backward form switch changes the backward column only") {
    Scenario scenario = default_scenario();
    scenario.sweep = SweepRange{50.0, 50.0, 5.0};
    const auto integral_rows = run_sweep(scenario);
    scenario.backward_form = BackwardForm::paper_literal;
    const auto paper_rows = run_sweep(scenario);
    CHECK(integral_rows[0].raman_fwd_w == doctest::Approx(paper_rows[0].raman_fwd_w));
    CHECK(integral_rows[0].raman_bwd_w != paper_rows[0].raman_bwd_w);
}

TEST_CASE("clock Raman contribution is small but present by default") {
    Scenario with_clock = default_scenario();
    with_clock.sweep = SweepRange{50.0, 50.0, 5.0};
    Scenario without_clock = with_clock;
    without_clock.include_clock_raman = false;

    const auto with_rows = run_sweep(with_clock);
    const auto without_rows = run_sweep(without_clock);
    CHECK(with_rows[0].p_r > without_rows[0].p_r);
    // The low-power clock laser stays a minor contributor.
    CHECK((with_rows[0].p_r - without_rows[0].p_r) / with_rows[0].p_r < 0.25);
}

TEST_CASE("keyrate text carries the breakdown") {
    const Scenario scenario = default_scenario();
    const std::string text = keyrate_text(scenario, 50.0);
    CHECK(text.find("secure_bps") != std::string::npos);
    CHECK(text.find("decoy_y1") != std::string::npos);
    CHECK(text.find("qber") != std::string::npos);
}

TEST_CASE("mc csv is reproducible per seed") {
    Scenario scenario = default_scenario();
    const std::string a = mc_csv(scenario, 50.0, 200000, 42);
    const std::string b = mc_csv(scenario, 50.0, 200000, 42);
    const std::string c = mc_csv(scenario, 50.0, 200000, 7);
    CHECK(a == b);
    CHECK(a != c);
    CHECK(a.rfind("class,mu,pulses,clicks,t_empirical,t_model,sifted,sifted_errors,"
                  "e_empirical,e_model\n",
                  0) == 0);
}
