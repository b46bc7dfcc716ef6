#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qkdsim/scenario.hpp"

namespace qkdsim {

enum class Role { quantum, clock, alice_data, bob_data };

const char* to_string(Role role);

/// Mapping of one role to one CWDM passband with its launch power.
struct RoleAssignment {
    Role role = Role::quantum;
    Wavelength band{1551.0};
    std::optional<double> launch_dbm; // absent for the quantum role
};

struct ChannelAssignment {
    std::vector<RoleAssignment> roles;
    Wavelength band_for(Role role) const;
};

struct PlanConstraints {
    std::vector<Role> roles = {Role::quantum, Role::clock, Role::alice_data, Role::bob_data};
    double max_launch_dbm = 3.0;
    /// Keep the quantum role on the lowest-attenuation passband. On by
    /// default: the Raman coefficient fixtures are measured into that band,
    /// and the quantum path wants the least fiber loss anyway.
    bool pin_quantum_to_lowest_loss = true;
    /// Lengths over which the worst-case Raman objective is taken.
    SweepRange objective_sweep{0.0, 100.0, 5.0};
};

struct PlanCandidate {
    ChannelAssignment assignment;
    bool feasible = false;
    double objective_w = 0.0; // worst-case Raman power into the quantum receiver
    std::string reason;       // why the candidate is infeasible
};

struct PlanResult {
    ChannelAssignment chosen;
    double objective_w = 0.0;
    std::vector<PlanCandidate> candidates; // full enumeration, evaluation order
};

/// Raman power into the quantum receiver (before the NBF) for an explicit
/// assignment at one length.
double evaluate_assignment_w(const ChannelAssignment& assignment, const Scenario& scenario,
                             double length_km);

/// Exhaustive search over role-to-passband bijections minimizing the
/// worst-case Raman power over the sweep, subject to data-link feasibility.
/// Ties break lexicographically by wavelength in role order. Throws
/// PlanningError when no bijection is feasible.
PlanResult plan(const Scenario& scenario, const PlanConstraints& constraints = {});

std::string plan_text(const PlanResult& result);
std::string plan_csv(const PlanResult& result);

} // namespace qkdsim
