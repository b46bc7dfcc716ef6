#include <doctest.h>

#include <algorithm>
#include <vector>

#include "qkdsim/planner.hpp"

using namespace qkdsim;

TEST_CASE("default scenario reproduces the operating assignment") {
    const Scenario scenario = default_scenario();
    const PlanResult result = plan(scenario);

    CHECK(result.chosen.band_for(Role::quantum).nm == 1551.0);
    CHECK(result.chosen.band_for(Role::clock).nm == 1571.0);
    CHECK(result.chosen.band_for(Role::alice_data).nm == 1591.0);
    CHECK(result.chosen.band_for(Role::bob_data).nm == 1611.0);
    CHECK(result.candidates.size() == 24);
}

TEST_CASE("chosen objective is minimal over the exhaustive enumeration") {
    const Scenario scenario = default_scenario();
    const PlanResult result = plan(scenario);
    for (const auto& candidate : result.candidates) {
        if (candidate.feasible) {
            CHECK(result.objective_w <= candidate.objective_w + 1e-18);
        }
    }
    // Brute force next to the planner: recompute every feasible candidate's
    // worst case straight from the scatter model.
    const auto lengths = PlanConstraints{}.objective_sweep.points();
    for (const auto& candidate : result.candidates) {
        if (!candidate.feasible) continue;
        double worst = 0.0;
        for (const double km : lengths) {
            worst = std::max(worst, evaluate_assignment_w(candidate.assignment, scenario, km));
        }
        CHECK(candidate.objective_w == doctest::Approx(worst).epsilon(1e-12));
        CHECK(result.objective_w <= worst + 1e-18);
    }
}

TEST_CASE("plan is invariant under permutation of the passband list") {
    Scenario scenario = default_scenario();
    const PlanResult reference = plan(scenario);

    std::swap(scenario.grid.passband_centers[0], scenario.grid.passband_centers[3]);
    std::swap(scenario.grid.insertion_loss_db[0], scenario.grid.insertion_loss_db[3]);
    std::swap(scenario.grid.passband_centers[1], scenario.grid.passband_centers[2]);
    std::swap(scenario.grid.insertion_loss_db[1], scenario.grid.insertion_loss_db[2]);

    const PlanResult permuted = plan(scenario);
    for (const Role role : {Role::quantum, Role::clock, Role::alice_data, Role::bob_data}) {
        CHECK(permuted.chosen.band_for(role).nm == reference.chosen.band_for(role).nm);
    }
    CHECK(permuted.objective_w == doctest::Approx(reference.objective_w).epsilon(1e-12));
}

TEST_CASE("a single classical channel is pushed away from the quantum band") {
    Scenario scenario = default_scenario();
    PlanConstraints constraints;
    constraints.roles = {Role::quantum, Role::bob_data};
    const PlanResult result = plan(scenario, constraints);
    CHECK(result.chosen.band_for(Role::quantum).nm == 1551.0);
    CHECK(result.chosen.band_for(Role::bob_data).nm == 1611.0);
}

TEST_CASE("an assignment without classical channels carries no noise") {
    const Scenario scenario = default_scenario();
    ChannelAssignment quantum_only;
    quantum_only.roles = {{Role::quantum, Wavelength{1551.0}, {}}};
    CHECK(evaluate_assignment_w(quantum_only, scenario, 50.0) == 0.0);
}

TEST_CASE("operating assignment noise at 80 km matches the calibrated fixture") {
    const Scenario scenario = default_scenario();
    ChannelAssignment paper;
    paper.roles = {{Role::quantum, Wavelength{1551.0}, {}},
                   {Role::clock, Wavelength{1571.0}, {}},
                   {Role::alice_data, Wavelength{1591.0}, {}},
                   {Role::bob_data, Wavelength{1611.0}, {}}};
    CHECK(evaluate_assignment_w(paper, scenario, 80.0) ==
          doctest::Approx(5.2053e-12).epsilon(1e-3));
}

TEST_CASE("swapping the backward data laser closer to the quantum band hurts") {
    const Scenario scenario = default_scenario();
    ChannelAssignment operating;
    operating.roles = {{Role::quantum, Wavelength{1551.0}, {}},
                       {Role::clock, Wavelength{1571.0}, {}},
                       {Role::alice_data, Wavelength{1611.0}, {}},
                       {Role::bob_data, Wavelength{1591.0}, {}}};
    ChannelAssignment paper;
    paper.roles = {{Role::quantum, Wavelength{1551.0}, {}},
                   {Role::clock, Wavelength{1571.0}, {}},
                   {Role::alice_data, Wavelength{1591.0}, {}},
                   {Role::bob_data, Wavelength{1611.0}, {}}};
    CHECK(evaluate_assignment_w(operating, scenario, 50.0) >
          evaluate_assignment_w(paper, scenario, 50.0));
}

TEST_CASE("infeasible constraints raise a planning error") {
    SUBCASE("launch cap below the required power") {
        const Scenario scenario = default_scenario();
        PlanConstraints constraints;
        constraints.max_launch_dbm = -40.0; // below any feasible data launch
        CHECK_THROWS_AS(plan(scenario, constraints), PlanningError);
    }
    SUBCASE("three bands for four roles") {
        Scenario scenario = default_scenario();
        scenario.grid.passband_centers = {Wavelength{1551.0}, Wavelength{1571.0},
                                          Wavelength{1591.0}};
        scenario.grid.insertion_loss_db = {0.5, 0.6, 0.7};
        CHECK_THROWS_AS(plan(scenario), PlanningError);
    }
}

TEST_CASE("plan reports render") {
    const Scenario scenario = default_scenario();
    const PlanResult result = plan(scenario);
    const std::string text = plan_text(result);
    CHECK(text.find("quantum") != std::string::npos);
    CHECK(text.find("1551") != std::string::npos);

    const std::string csv = plan_csv(result);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 25); // header + 24 candidates
    CHECK(csv.rfind("rank,quantum_nm,clock_nm,alice_data_nm,bob_data_nm,feasible,"
                    "objective_w,reason\n",
                    0) == 0);
}
