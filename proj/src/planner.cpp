#include "qkdsim/planner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace qkdsim {

namespace {

Direction direction_for(Role role) {
    return role == Role::bob_data ? Direction::bob_to_alice : Direction::alice_to_bob;
}

CwdmGrid sorted_grid(const CwdmGrid& grid) {
    std::vector<std::pair<double, double>> bands;
    for (std::size_t i = 0; i < grid.passband_centers.size(); ++i) {
        bands.emplace_back(grid.passband_centers[i].nm, grid.insertion_loss_db.at(i));
    }
    std::sort(bands.begin(), bands.end());
    CwdmGrid out = grid;
    out.passband_centers.clear();
    out.insertion_loss_db.clear();
    for (const auto& [nm, loss] : bands) {
        out.passband_centers.push_back(Wavelength{nm});
        out.insertion_loss_db.push_back(loss);
    }
    return out;
}

DataChannelSpec data_spec_for(const Scenario& scenario, Role role, Wavelength band) {
    DataChannelSpec spec = role == Role::alice_data ? scenario.alice_data : scenario.bob_data;
    spec.wavelength = band;
    spec.direction = direction_for(role);
    return spec;
}

} // namespace

const char* to_string(Role role) {
    switch (role) {
        case Role::quantum: return "quantum";
        case Role::clock: return "clock";
        case Role::alice_data: return "alice_data";
        case Role::bob_data: return "bob_data";
    }
    return "?";
}

Wavelength ChannelAssignment::band_for(Role role) const {
    for (const auto& entry : roles) {
        if (entry.role == role) {
            return entry.band;
        }
    }
    throw PlanningError(std::string("assignment has no band for role ") + to_string(role));
}

double evaluate_assignment_w(const ChannelAssignment& assignment, const Scenario& scenario,
                             double length_km) {
    QuantumChannelSpec quantum = scenario.quantum;
    quantum.center = assignment.band_for(Role::quantum);

    std::vector<RamanSource> sources;
    for (const auto& entry : assignment.roles) {
        if (entry.role == Role::quantum) continue;
        double launch_dbm;
        if (entry.launch_dbm) {
            launch_dbm = *entry.launch_dbm;
        } else if (entry.role == Role::clock) {
            launch_dbm = scenario.clock.launch_power_dbm;
        } else {
            launch_dbm = operating_launch_dbm(data_spec_for(scenario, entry.role, entry.band),
                                              scenario.fiber, scenario.grid, length_km);
        }
        sources.push_back({entry.band, direction_for(entry.role), launch_dbm});
    }
    const NoiseBudget budget =
        total_raman_into_receiver(sources, scenario.fiber, scenario.grid, quantum, scenario.beta,
                                  length_km, scenario.backward_form);
    return budget.raman_power_w;
}

PlanResult plan(const Scenario& scenario, const PlanConstraints& constraints) {
    const CwdmGrid grid = sorted_grid(scenario.grid);
    const std::size_t n_roles = constraints.roles.size();
    if (grid.passband_centers.size() < n_roles) {
        throw PlanningError("need at least " + std::to_string(n_roles) + " passbands for " +
                            std::to_string(n_roles) + " roles, got " +
                            std::to_string(grid.passband_centers.size()));
    }
    if (std::find(constraints.roles.begin(), constraints.roles.end(), Role::quantum) ==
        constraints.roles.end()) {
        throw PlanningError("the quantum role must be part of the plan");
    }
    const std::vector<double> lengths = constraints.objective_sweep.points();
    if (lengths.empty()) {
        throw PlanningError("objective sweep is empty");
    }
    const double longest = lengths.back();

    Wavelength lowest_loss_band = grid.passband_centers.front();
    for (const auto& band : grid.passband_centers) {
        if (attenuation_db_per_km(scenario.fiber, band) <
            attenuation_db_per_km(scenario.fiber, lowest_loss_band)) {
            lowest_loss_band = band;
        }
    }

    PlanResult result;
    bool have_best = false;

    // Lexicographic enumeration over band indices, one per role; the first
    // minimal candidate therefore wins wavelength-order ties.
    std::vector<std::size_t> pick(n_roles, 0);
    const std::size_t n_bands = grid.passband_centers.size();
    const auto advance = [&]() {
        for (std::size_t i = n_roles; i-- > 0;) {
            if (++pick[i] < n_bands) return true;
            pick[i] = 0;
        }
        return false;
    };

    do {
        std::set<std::size_t> used(pick.begin(), pick.end());
        if (used.size() != n_roles) continue; // not a bijection

        PlanCandidate candidate;
        for (std::size_t i = 0; i < n_roles; ++i) {
            RoleAssignment entry;
            entry.role = constraints.roles[i];
            entry.band = grid.passband_centers[pick[i]];
            candidate.assignment.roles.push_back(entry);
        }

        candidate.feasible = true;
        if (constraints.pin_quantum_to_lowest_loss &&
            candidate.assignment.band_for(Role::quantum).nm != lowest_loss_band.nm) {
            char reason[120];
            std::snprintf(reason, sizeof(reason),
                          "quantum pinned to the lowest-loss band (%.0f nm)",
                          lowest_loss_band.nm);
            candidate.feasible = false;
            candidate.reason = reason;
        }
        for (auto& entry : candidate.assignment.roles) {
            if (!candidate.feasible) break;
            if (entry.role == Role::quantum) continue;
            if (entry.role == Role::clock) {
                entry.launch_dbm = scenario.clock.launch_power_dbm;
                continue;
            }
            const DataChannelSpec spec = data_spec_for(scenario, entry.role, entry.band);
            const double needed = min_launch_power_dbm(spec, scenario.fiber, grid, longest,
                                                       spec.launch_margin_db);
            if (needed > constraints.max_launch_dbm) {
                char reason[160];
                std::snprintf(reason, sizeof(reason),
                              "%s at %.0f nm needs %.2f dBm launch at %.0f km, cap is %.2f dBm",
                              to_string(entry.role), entry.band.nm, needed, longest,
                              constraints.max_launch_dbm);
                candidate.feasible = false;
                candidate.reason = reason;
                break;
            }
            entry.launch_dbm =
                operating_launch_dbm(spec, scenario.fiber, grid, scenario.fiber.length_km);
        }

        if (candidate.feasible) {
            try {
                double worst = 0.0;
                for (const double length : lengths) {
                    worst = std::max(worst,
                                     evaluate_assignment_w(candidate.assignment, scenario, length));
                }
                candidate.objective_w = worst;
            } catch (const std::exception& e) {
                candidate.feasible = false;
                candidate.reason = e.what();
            }
        }

        if (candidate.feasible &&
            (!have_best || candidate.objective_w < result.objective_w)) {
            result.chosen = candidate.assignment;
            result.objective_w = candidate.objective_w;
            have_best = true;
        }
        result.candidates.push_back(std::move(candidate));
    } while (advance());

    if (!have_best) {
        std::set<std::string> reasons;
        for (const auto& candidate : result.candidates) {
            if (!candidate.reason.empty()) reasons.insert(candidate.reason);
        }
        std::string message = "no feasible channel assignment:";
        for (const auto& reason : reasons) {
            message += "\n  " + reason;
        }
        throw PlanningError(message);
    }
    return result;
}

namespace {

std::string band_cell(const ChannelAssignment& assignment, Role role) {
    for (const auto& entry : assignment.roles) {
        if (entry.role == role) {
            char cell[32];
            std::snprintf(cell, sizeof(cell), "%.0f", entry.band.nm);
            return cell;
        }
    }
    return "";
}

} // namespace

std::string plan_text(const PlanResult& result) {
    std::ostringstream out;
    out << "chosen assignment (worst-case Raman " << result.objective_w << " W):\n";
    for (const auto& entry : result.chosen.roles) {
        char line[128];
        if (entry.launch_dbm) {
            std::snprintf(line, sizeof(line), "  %-11s %.0f nm  launch %.2f dBm",
                          to_string(entry.role), entry.band.nm, *entry.launch_dbm);
        } else {
            std::snprintf(line, sizeof(line), "  %-11s %.0f nm", to_string(entry.role),
                          entry.band.nm);
        }
        out << line << '\n';
    }
    std::size_t feasible = 0;
    for (const auto& candidate : result.candidates) {
        if (candidate.feasible) ++feasible;
    }
    out << result.candidates.size() << " candidates, " << feasible << " feasible\n";
    return out.str();
}

std::string plan_csv(const PlanResult& result) {
    std::string out = "rank,quantum_nm,clock_nm,alice_data_nm,bob_data_nm,feasible,objective_w,reason\n";
    for (std::size_t i = 0; i < result.candidates.size(); ++i) {
        const auto& candidate = result.candidates[i];
        char prefix[32];
        std::snprintf(prefix, sizeof(prefix), "%zu,", i);
        out += prefix;
        out += band_cell(candidate.assignment, Role::quantum) + ",";
        out += band_cell(candidate.assignment, Role::clock) + ",";
        out += band_cell(candidate.assignment, Role::alice_data) + ",";
        out += band_cell(candidate.assignment, Role::bob_data) + ",";
        char tail[64];
        std::snprintf(tail, sizeof(tail), "%d,%.9e,", candidate.feasible ? 1 : 0,
                      candidate.objective_w);
        out += tail;
        std::string reason = candidate.reason;
        std::replace(reason.begin(), reason.end(), ',', ';');
        out += reason + "\n";
    }
    return out;
}

} // namespace qkdsim
