// Command-line front end of the qkdsim shared library. Talks to the core
// exclusively through the C API in qkdsim/qkdsim.h.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qkdsim/qkdsim.h"

namespace {

struct ScenarioDeleter {
    void operator()(qkdsim_scenario* s) const { qkdsim_scenario_free(s); }
};
using ScenarioHandle = std::unique_ptr<qkdsim_scenario, ScenarioDeleter>;

struct StringDeleter {
    void operator()(char* s) const { qkdsim_string_free(s); }
};
using ApiString = std::unique_ptr<char, StringDeleter>;

struct CommonOptions {
    std::string config;
    std::string out;
    bool has_from = false, has_to = false, has_step = false;
    double from_km = 0.0;
    double to_km = 0.0;
    double step_km = 0.0;
    std::string backward_form;
    std::string include_clock_raman;
    std::vector<double> bands_nm;
};

int fail(qkdsim_status status) {
    std::cerr << "error (" << qkdsim_status_name(status) << "): " << qkdsim_last_error() << "\n";
    return 1;
}

int load_scenario(const CommonOptions& options, ScenarioHandle& scenario) {
    qkdsim_scenario* raw = nullptr;
    const qkdsim_status status = options.config.empty()
                                     ? qkdsim_scenario_create_default(&raw)
                                     : qkdsim_scenario_load(options.config.c_str(), &raw);
    if (status != QKDSIM_OK) return fail(status);
    scenario.reset(raw);

    if (options.has_from || options.has_to || options.has_step) {
        double from = 0.0, to = 0.0, step = 0.0;
        if (qkdsim_scenario_get_sweep(scenario.get(), &from, &to, &step) != QKDSIM_OK) {
            return fail(QKDSIM_ERR_INTERNAL);
        }
        if (options.has_from) from = options.from_km;
        if (options.has_to) to = options.to_km;
        if (options.has_step) step = options.step_km;
        const qkdsim_status s = qkdsim_scenario_set_sweep(scenario.get(), from, to, step);
        if (s != QKDSIM_OK) return fail(s);
    }
    if (!options.backward_form.empty()) {
        const qkdsim_status s =
            qkdsim_scenario_set_backward_form(scenario.get(), options.backward_form.c_str());
        if (s != QKDSIM_OK) return fail(s);
    }
    if (!options.include_clock_raman.empty()) {
        const int include = options.include_clock_raman == "true" ? 1 : 0;
        const qkdsim_status s =
            qkdsim_scenario_set_include_clock_raman(scenario.get(), include);
        if (s != QKDSIM_OK) return fail(s);
    }
    if (!options.bands_nm.empty()) {
        const qkdsim_status s = qkdsim_scenario_set_passbands(
            scenario.get(), options.bands_nm.data(), options.bands_nm.size());
        if (s != QKDSIM_OK) return fail(s);
    }
    return 0;
}

int emit(const CommonOptions& options, const char* payload) {
    if (options.out.empty()) {
        std::cout << payload;
        return 0;
    }
    std::ofstream file(options.out, std::ios::binary);
    if (!file) {
        std::cerr << "error: cannot open output file '" << options.out << "'\n";
        return 1;
    }
    file << payload;
    return file.good() ? 0 : 1;
}

void add_common_flags(CLI::App* cmd, CommonOptions& options, bool with_sweep) {
    cmd->add_option("--config", options.config, "scenario config file (INI); defaults built in");
    cmd->add_option("--out", options.out, "write the report to this file instead of stdout");
    if (with_sweep) {
        cmd->add_option("--from", options.from_km, "sweep start in km")
            ->each([&options](const std::string&) { options.has_from = true; });
        cmd->add_option("--to", options.to_km, "sweep end in km")
            ->each([&options](const std::string&) { options.has_to = true; });
        cmd->add_option("--step", options.step_km, "sweep step in km")
            ->each([&options](const std::string&) { options.has_step = true; });
    }
    cmd->add_option("--backward-form", options.backward_form,
                    "backward Raman form: integral or paper")
        ->check(CLI::IsMember({"integral", "paper"}));
    cmd->add_option("--include-clock-raman", options.include_clock_raman,
                    "include the clock laser in the Raman sum: true or false")
        ->check(CLI::IsMember({"true", "false"}));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decoy-state BB84 / classical WDM coexistence simulator"};
    app.require_subcommand(1);

    CommonOptions options;
    double length_km = 90.0;
    std::uint64_t n_pulses = 10000000;
    std::uint64_t seed = 42;

    CLI::App* sweep = app.add_subcommand("sweep", "key rate and noise versus fiber length (CSV)");
    add_common_flags(sweep, options, true);

    CLI::App* ramancmd = app.add_subcommand("raman", "Raman noise budget versus length (CSV)");
    add_common_flags(ramancmd, options, true);

    CLI::App* plancmd = app.add_subcommand("plan", "CWDM channel assignment search");
    add_common_flags(plancmd, options, false);
    plancmd->add_option("--bands", options.bands_nm,
                        "override the CWDM passband centers (nm, comma separated)")
        ->delimiter(',');

    CLI::App* keyrate = app.add_subcommand("keyrate", "verbose breakdown at one length");
    add_common_flags(keyrate, options, false);
    keyrate->add_option("--length", length_km, "fiber length in km");

    CLI::App* mc = app.add_subcommand("mc", "Monte-Carlo session at one length (CSV)");
    add_common_flags(mc, options, false);
    mc->add_option("--length", length_km, "fiber length in km");
    CLI::Option* pulses_opt = mc->add_option("--pulses", n_pulses, "number of pulses to simulate");
    CLI::Option* seed_opt = mc->add_option("--seed", seed, "random seed");

    CLI::App* validatecmd = app.add_subcommand("validate", "list scenario invariant violations");
    add_common_flags(validatecmd, options, false);

    CLI11_PARSE(app, argc, argv);

    ScenarioHandle scenario;
    if (const int rc = load_scenario(options, scenario); rc != 0) return rc;

    char* payload = nullptr;
    qkdsim_status status = QKDSIM_OK;

    if (sweep->parsed()) {
        status = qkdsim_sweep_csv(scenario.get(), &payload);
    } else if (ramancmd->parsed()) {
        status = qkdsim_raman_csv(scenario.get(), &payload);
    } else if (keyrate->parsed()) {
        status = qkdsim_keyrate_text(scenario.get(), length_km, &payload);
    } else if (mc->parsed()) {
        std::uint64_t scenario_pulses = 0;
        std::uint64_t scenario_seed = 0;
        if (qkdsim_scenario_get_mc_defaults(scenario.get(), &scenario_pulses, &scenario_seed) !=
            QKDSIM_OK) {
            return fail(QKDSIM_ERR_INTERNAL);
        }
        if (pulses_opt->count() == 0) n_pulses = scenario_pulses;
        if (seed_opt->count() == 0) seed = scenario_seed;
        status = qkdsim_mc_csv(scenario.get(), length_km, n_pulses, seed, &payload);
    } else if (plancmd->parsed()) {
        char* text = nullptr;
        char* csv = nullptr;
        status = qkdsim_plan_report(scenario.get(), &text, &csv);
        if (status == QKDSIM_OK) {
            ApiString text_guard(text);
            std::cerr << text;
            payload = csv;
        }
    } else if (validatecmd->parsed()) {
        status = qkdsim_validate(scenario.get(), &payload);
        if (status == QKDSIM_OK) {
            ApiString guard(payload);
            if (guard.get()[0] == '\0') {
                std::cout << "scenario valid\n";
                return 0;
            }
            std::cout << guard.get();
            return 1;
        }
    }

    if (status != QKDSIM_OK) return fail(status);
    ApiString guard(payload);
    return emit(options, guard.get());
}
