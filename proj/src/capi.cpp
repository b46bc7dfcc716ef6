#include "qkdsim/qkdsim.h"

#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "qkdsim/planner.hpp"
#include "qkdsim/scenario.hpp"
#include "qkdsim/sweep.hpp"

struct qkdsim_scenario {
    qkdsim::Scenario value;
};

namespace {

thread_local std::string g_last_error;

char* copy_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn>
qkdsim_status guarded(Fn&& fn) {
    try {
        g_last_error.clear();
        return fn();
    } catch (const qkdsim::DomainError& e) {
        g_last_error = e.what();
        return QKDSIM_ERR_DOMAIN;
    } catch (const qkdsim::ConfigError& e) {
        g_last_error = e.what();
        return QKDSIM_ERR_CONFIG;
    } catch (const qkdsim::PlanningError& e) {
        g_last_error = e.what();
        return QKDSIM_ERR_PLANNING;
    } catch (const qkdsim::EstimationError& e) {
        g_last_error = e.what();
        return QKDSIM_ERR_ESTIMATION;
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return QKDSIM_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return QKDSIM_ERR_INTERNAL;
    }
}

qkdsim_status invalid_argument(const char* message) {
    g_last_error = message;
    return QKDSIM_ERR_INVALID_ARGUMENT;
}

} // namespace

extern "C" {

const char* qkdsim_version(void) {
    return "1.0.0";
}

const char* qkdsim_status_name(qkdsim_status status) {
    switch (status) {
        case QKDSIM_OK: return "ok";
        case QKDSIM_ERR_INVALID_ARGUMENT: return "invalid_argument";
        case QKDSIM_ERR_IO: return "io";
        case QKDSIM_ERR_CONFIG: return "config";
        case QKDSIM_ERR_PLANNING: return "planning";
        case QKDSIM_ERR_ESTIMATION: return "estimation";
        case QKDSIM_ERR_DOMAIN: return "domain";
        case QKDSIM_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* qkdsim_last_error(void) {
    return g_last_error.c_str();
}

qkdsim_status qkdsim_scenario_create_default(qkdsim_scenario** out) {
    if (out == nullptr) return invalid_argument("out pointer is null");
    return guarded([&] {
        *out = new qkdsim_scenario{qkdsim::default_scenario()};
        return QKDSIM_OK;
    });
}

qkdsim_status qkdsim_scenario_load(const char* path, qkdsim_scenario** out) {
    if (path == nullptr) return invalid_argument("path is null");
    if (out == nullptr) return invalid_argument("out pointer is null");
    return guarded([&] {
        *out = new qkdsim_scenario{qkdsim::load_scenario(path)};
        return QKDSIM_OK;
    });
}

void qkdsim_scenario_free(qkdsim_scenario* scenario) {
    delete scenario;
}

qkdsim_status qkdsim_scenario_set_sweep(qkdsim_scenario* scenario, double from_km, double to_km,
                                        double step_km) {
    if (scenario == nullptr) return invalid_argument("scenario is null");
    if (!(step_km > 0.0)) return invalid_argument("sweep step must be positive");
    scenario->value.sweep = qkdsim::SweepRange{from_km, to_km, step_km};
    g_last_error.clear();
    return QKDSIM_OK;
}

qkdsim_status qkdsim_scenario_get_sweep(const qkdsim_scenario* scenario, double* from_km,
                                        double* to_km, double* step_km) {
    if (scenario == nullptr) return invalid_argument("scenario is null");
    if (from_km == nullptr || to_km == nullptr || step_km == nullptr) {
        return invalid_argument("out pointer is null");
    }
    *from_km = scenario->value.sweep.from_km;
    *to_km = scenario->value.sweep.to_km;
    *step_km = scenario->value.sweep.step_km;
    g_last_error.clear();
    return QKDSIM_OK;
}

qkdsim_status qkdsim_scenario_set_passbands(qkdsim_scenario* scenario, const double* centers_nm,
                                            uint64_t count) {
    if (scenario == nullptr) return invalid_argument("scenario is null");
    if (centers_nm == nullptr || count == 0) return invalid_argument("passband list is empty");
    return guarded([&] {
        auto& grid = scenario->value.grid;
        if (count > grid.insertion_loss_db.size()) {
            throw qkdsim::ConfigError(
                "passband override needs an insertion loss per band; the grid has only " +
                std::to_string(grid.insertion_loss_db.size()));
        }
        std::vector<qkdsim::Wavelength> centers;
        for (uint64_t i = 0; i < count; ++i) {
            centers.push_back(qkdsim::Wavelength::nanometers(centers_nm[i]));
        }
        grid.passband_centers = std::move(centers);
        grid.insertion_loss_db.resize(count);
        return QKDSIM_OK;
    });
}

qkdsim_status qkdsim_scenario_get_mc_defaults(const qkdsim_scenario* scenario, uint64_t* n_pulses,
                                              uint64_t* seed) {
    if (scenario == nullptr) return invalid_argument("scenario is null");
    if (n_pulses == nullptr || seed == nullptr) return invalid_argument("out pointer is null");
    *n_pulses = scenario->value.mc_pulses;
    *seed = scenario->value.mc_seed;
    g_last_error.clear();
    return QKDSIM_OK;
}

qkdsim_status qkdsim_scenario_set_backward_form(qkdsim_scenario* scenario, const char* form) {
    if (scenario == nullptr) return invalid_argument("scenario is null");
    if (form == nullptr) return invalid_argument("form is null");
    const std::string name(form);
    if (name == "integral") {
        scenario->value.backward_form = qkdsim::BackwardForm::integral;
    } else if (name == "paper") {
        scenario->value.backward_form = qkdsim::BackwardForm::paper_literal;
    } else {
        return invalid_argument("backward form must be 'integral' or 'paper'");
    }
    g_last_error.clear();
    return QKDSIM_OK;
}

qkdsim_status qkdsim_scenario_set_include_clock_raman(qkdsim_scenario* scenario, int include) {
    if (scenario == nullptr) return invalid_argument("scenario is null");
    scenario->value.include_clock_raman = include != 0;
    g_last_error.clear();
    return QKDSIM_OK;
}

qkdsim_status qkdsim_validate(const qkdsim_scenario* scenario, char** diagnostics_out) {
    if (scenario == nullptr) return invalid_argument("scenario is null");
    if (diagnostics_out == nullptr) return invalid_argument("out pointer is null");
    return guarded([&] {
        std::string joined;
        for (const auto& line : qkdsim::validate(scenario->value)) {
            joined += line;
            joined += '\n';
        }
        *diagnostics_out = copy_string(joined);
        return QKDSIM_OK;
    });
}

qkdsim_status qkdsim_sweep_csv(const qkdsim_scenario* scenario, char** csv_out) {
    if (scenario == nullptr) return invalid_argument("scenario is null");
    if (csv_out == nullptr) return invalid_argument("out pointer is null");
    return guarded([&] {
        *csv_out = copy_string(qkdsim::sweep_csv(qkdsim::run_sweep(scenario->value)));
        return QKDSIM_OK;
    });
}

qkdsim_status qkdsim_raman_csv(const qkdsim_scenario* scenario, char** csv_out) {
    if (scenario == nullptr) return invalid_argument("scenario is null");
    if (csv_out == nullptr) return invalid_argument("out pointer is null");
    return guarded([&] {
        *csv_out = copy_string(qkdsim::raman_csv(qkdsim::run_sweep(scenario->value)));
        return QKDSIM_OK;
    });
}

qkdsim_status qkdsim_plan_report(const qkdsim_scenario* scenario, char** text_out,
                                 char** csv_out) {
    if (scenario == nullptr) return invalid_argument("scenario is null");
    if (text_out == nullptr || csv_out == nullptr) return invalid_argument("out pointer is null");
    return guarded([&] {
        const qkdsim::PlanResult result = qkdsim::plan(scenario->value);
        *text_out = copy_string(qkdsim::plan_text(result));
        *csv_out = copy_string(qkdsim::plan_csv(result));
        return QKDSIM_OK;
    });
}

qkdsim_status qkdsim_keyrate_text(const qkdsim_scenario* scenario, double length_km,
                                  char** text_out) {
    if (scenario == nullptr) return invalid_argument("scenario is null");
    if (text_out == nullptr) return invalid_argument("out pointer is null");
    if (!(length_km >= 0.0)) return invalid_argument("length must be nonnegative");
    return guarded([&] {
        *text_out = copy_string(qkdsim::keyrate_text(scenario->value, length_km));
        return QKDSIM_OK;
    });
}

qkdsim_status qkdsim_mc_csv(const qkdsim_scenario* scenario, double length_km, uint64_t n_pulses,
                            uint64_t seed, char** csv_out) {
    if (scenario == nullptr) return invalid_argument("scenario is null");
    if (csv_out == nullptr) return invalid_argument("out pointer is null");
    if (!(length_km >= 0.0)) return invalid_argument("length must be nonnegative");
    if (n_pulses == 0) return invalid_argument("pulse count must be positive");
    return guarded([&] {
        *csv_out = copy_string(qkdsim::mc_csv(scenario->value, length_km, n_pulses, seed));
        return QKDSIM_OK;
    });
}

void qkdsim_string_free(char* s) {
    delete[] s;
}

} // extern "C"
