#include "qkdsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace qkdsim {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream stream(s);
    while (std::getline(stream, item, sep)) {
        out.push_back(trim(item));
    }
    return out;
}

double parse_double(const std::string& value, const std::string& where) {
    try {
        std::size_t consumed = 0;
        const double parsed = std::stod(value, &consumed);
        if (consumed != value.size()) {
            throw std::invalid_argument("trailing characters");
        }
        return parsed;
    } catch (const std::exception&) {
        throw ConfigError(where + ": cannot parse number '" + value + "'");
    }
}

bool parse_bool(const std::string& value, const std::string& where) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError(where + ": cannot parse boolean '" + value + "'");
}

using IniSection = std::vector<std::pair<std::string, std::string>>;
using IniFile = std::vector<std::pair<std::string, IniSection>>;

IniFile parse_ini(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    IniFile file;
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError(path + ":" + std::to_string(line_no) + ": malformed section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            file.emplace_back(section, IniSection{});
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key = value");
        }
        if (file.empty() || file.back().first != section) {
            file.emplace_back(section, IniSection{});
        }
        file.back().second.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return file;
}

std::map<double, double> parse_wavelength_map(const std::string& value, const std::string& where) {
    std::map<double, double> out;
    for (const auto& entry : split(value, ',')) {
        const auto colon = entry.find(':');
        if (colon == std::string::npos) {
            throw ConfigError(where + ": expected wavelength:value pairs");
        }
        out[parse_double(trim(entry.substr(0, colon)), where)] =
            parse_double(trim(entry.substr(colon + 1)), where);
    }
    return out;
}

void apply_data_channel(DataChannelSpec& channel, const std::string& key,
                        const std::string& value, const std::string& where) {
    if (key == "wavelength_nm") {
        channel.wavelength = Wavelength::nanometers(parse_double(value, where));
    } else if (key == "bit_rate_bps") {
        channel.bit_rate_bps = parse_double(value, where);
    } else if (key == "sensitivity_dbm") {
        channel.sensitivity_dbm = parse_double(value, where);
    } else if (key == "ber_slope_decades_per_db") {
        channel.ber_slope_decades_per_db = parse_double(value, where);
    } else if (key == "launch_mode") {
        if (value == "auto") {
            channel.launch_auto = true;
        } else if (value == "fixed") {
            channel.launch_auto = false;
        } else {
            throw ConfigError(where + ": launch_mode must be auto or fixed");
        }
    } else if (key == "launch_power_dbm") {
        channel.launch_power_dbm = parse_double(value, where);
    } else if (key == "launch_margin_db") {
        channel.launch_margin_db = parse_double(value, where);
    } else {
        throw ConfigError(where + ": unknown key '" + key + "'");
    }
}

std::vector<std::vector<std::string>> read_csv(const std::string& path,
                                               std::size_t expected_columns,
                                               const std::string& expected_header) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open fixture '" + path + "'");
    }
    std::vector<std::vector<std::string>> rows;
    std::string line;
    bool header_seen = false;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        if (!header_seen) {
            if (line != expected_header) {
                throw ConfigError(path + ": expected header '" + expected_header + "'");
            }
            header_seen = true;
            continue;
        }
        auto fields = split(line, ',');
        if (fields.size() != expected_columns) {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": expected " +
                              std::to_string(expected_columns) + " columns");
        }
        rows.push_back(std::move(fields));
    }
    if (!header_seen) {
        throw ConfigError(path + ": missing header row");
    }
    return rows;
}

} // namespace

std::vector<double> SweepRange::points() const {
    std::vector<double> out;
    if (!(step_km > 0.0)) {
        throw ConfigError("sweep step must be positive");
    }
    for (std::size_t i = 0;; ++i) {
        const double km = from_km + static_cast<double>(i) * step_km;
        if (km > to_km + 1e-9) break;
        out.push_back(km);
    }
    return out;
}

ReceiverSpec Scenario::receiver() const {
    ReceiverSpec rx;
    rx.detector = detector;
    rx.optical_loss_db = grid.insertion_loss_for(quantum.center) +
                         quantum.nbf_insertion_loss_db + receiver_residual_loss_db;
    return rx;
}

Scenario default_scenario() {
    Scenario s;

    s.fiber.attenuation_db_per_km = {{1551.0, 0.20}, {1571.0, 0.21}, {1591.0, 0.22}, {1611.0, 0.24}};
    s.fiber.dispersion_ps_per_nm_km = 4.0;
    s.fiber.length_km = 90.0;
    s.fiber.connector_loss_db = 0.6;

    s.grid.passband_centers = {Wavelength{1551.0}, Wavelength{1571.0}, Wavelength{1591.0},
                               Wavelength{1611.0}};
    s.grid.passband_width_nm = 13.0;
    s.grid.insertion_loss_db = {0.5, 0.6, 0.7, 0.75};
    s.grid.adjacent_isolation_db = 30.0;

    s.quantum.center = Wavelength{1551.0};
    s.quantum.nbf_bandwidth_nm = 0.56;
    s.quantum.nbf_insertion_loss_db = 0.6;
    s.quantum.nbf_rejection_db = 15.0;

    s.detector.eta_sync = 0.20;
    s.detector.eta_async = 0.20 * std::pow(10.0, -0.94); // 9.4 dB temporal rejection
    s.detector.active_fwhm_ps = 100.0;
    s.detector.gate_period_ps = 1000.0;
    s.detector.dark_per_gate = 3.0319e-5; // fitted: QBER dark share at 90 km
    s.detector.afterpulse_prob = 0.01;    // fitted: floor split with e_opt

    s.receiver_residual_loss_db = 1.9218; // fitted: interferometer + receiver plumbing

    s.protocol.intensities = {{0.5, 0.988}, {0.1, 0.008}, {0.0007, 0.004}};
    s.protocol.signal_index = 0;
    s.protocol.clock_rate_hz = 1e9;
    s.protocol.sifting_factor = 0.5;
    s.protocol.f_ec = 1.1;
    s.protocol.e_opt = 0.023; // fitted: floor split with afterpulse_prob

    s.alice_data.wavelength = Wavelength{1591.0};
    s.alice_data.bit_rate_bps = 1.25e9;
    s.alice_data.sensitivity_dbm = -36.8;
    s.alice_data.ber_slope_decades_per_db = -1.5;
    s.alice_data.launch_auto = true;
    s.alice_data.launch_margin_db = 1.5;
    s.alice_data.direction = Direction::alice_to_bob;

    s.bob_data = s.alice_data;
    s.bob_data.wavelength = Wavelength{1611.0};
    s.bob_data.direction = Direction::bob_to_alice;

    s.clock.wavelength = Wavelength{1571.0};
    s.clock.pulse_rate_hz = 1e7;
    s.clock.launch_power_dbm = -29.0; // received -47.6 dBm at the 80 km reference
    s.clock.jitter_table = {
        {-54.0, 38.0}, {-52.0, 24.0}, {-50.0, 15.5}, {-48.0, 11.0}, {-47.6, 10.0},
        {-46.0, 8.2},  {-44.0, 6.8},  {-42.0, 5.8},  {-40.0, 5.1},  {-38.0, 4.7},
        {-36.0, 4.4},  {-34.0, 4.2},  {-32.0, 4.1},  {-30.0, 4.0},
    };

    // Fitted against the measured launch-power/noise operating points; the
    // profile falls with spectral distance from the 1551 nm band.
    using Key = RamanCoefficientTable::Key;
    s.beta.reference_bandwidth_nm = 13.0;
    s.beta.beta_per_km = {
        {Key{1571.0, Direction::alice_to_bob}, 3.5275e-8},
        {Key{1571.0, Direction::bob_to_alice}, 3.5275e-8},
        {Key{1591.0, Direction::alice_to_bob}, 2.1165e-8},
        {Key{1591.0, Direction::bob_to_alice}, 2.1165e-8},
        {Key{1611.0, Direction::alice_to_bob}, 1.1759e-8},
        {Key{1611.0, Direction::bob_to_alice}, 1.1759e-8},
    };

    s.backward_form = BackwardForm::integral;
    s.include_clock_raman = true;
    s.apply_jitter_penalty = true;
    s.sweep = SweepRange{0.0, 100.0, 5.0};
    s.mc_pulses = 10000000;
    s.mc_seed = 42;
    return s;
}

Scenario load_scenario(const std::string& path) {
    Scenario s = default_scenario();
    const IniFile file = parse_ini(path);
    const auto base_dir = std::filesystem::path(path).parent_path();

    auto resolve = [&](const std::string& relative) {
        const std::filesystem::path p(relative);
        return p.is_absolute() ? p.string() : (base_dir / p).string();
    };

    for (const auto& [section, entries] : file) {
        for (const auto& [key, value] : entries) {
            const std::string where = section.empty() ? key : section + "." + key;
            if (section == "fiber") {
                if (key == "attenuation_db_per_km") {
                    s.fiber.attenuation_db_per_km = parse_wavelength_map(value, where);
                } else if (key == "dispersion_ps_per_nm_km") {
                    s.fiber.dispersion_ps_per_nm_km = parse_double(value, where);
                } else if (key == "length_km") {
                    s.fiber.length_km = parse_double(value, where);
                } else if (key == "connector_loss_db") {
                    s.fiber.connector_loss_db = parse_double(value, where);
                } else {
                    throw ConfigError(where + ": unknown key");
                }
            } else if (section == "grid") {
                if (key == "passband_centers_nm") {
                    s.grid.passband_centers.clear();
                    for (const auto& item : split(value, ',')) {
                        s.grid.passband_centers.push_back(
                            Wavelength::nanometers(parse_double(item, where)));
                    }
                } else if (key == "passband_width_nm") {
                    s.grid.passband_width_nm = parse_double(value, where);
                } else if (key == "insertion_loss_db") {
                    s.grid.insertion_loss_db.clear();
                    for (const auto& item : split(value, ',')) {
                        s.grid.insertion_loss_db.push_back(parse_double(item, where));
                    }
                } else if (key == "adjacent_isolation_db") {
                    s.grid.adjacent_isolation_db = parse_double(value, where);
                } else {
                    throw ConfigError(where + ": unknown key");
                }
            } else if (section == "quantum") {
                if (key == "center_nm") {
                    s.quantum.center = Wavelength::nanometers(parse_double(value, where));
                } else if (key == "nbf_bandwidth_nm") {
                    s.quantum.nbf_bandwidth_nm = parse_double(value, where);
                } else if (key == "nbf_insertion_loss_db") {
                    s.quantum.nbf_insertion_loss_db = parse_double(value, where);
                } else if (key == "nbf_rejection_db") {
                    s.quantum.nbf_rejection_db = parse_double(value, where);
                } else {
                    throw ConfigError(where + ": unknown key");
                }
            } else if (section == "detector") {
                if (key == "eta_sync") {
                    s.detector.eta_sync = parse_double(value, where);
                } else if (key == "eta_async") {
                    s.detector.eta_async = parse_double(value, where);
                } else if (key == "active_fwhm_ps") {
                    s.detector.active_fwhm_ps = parse_double(value, where);
                } else if (key == "gate_period_ps") {
                    s.detector.gate_period_ps = parse_double(value, where);
                } else if (key == "dark_per_gate") {
                    s.detector.dark_per_gate = parse_double(value, where);
                } else if (key == "afterpulse_prob") {
                    s.detector.afterpulse_prob = parse_double(value, where);
                } else {
                    throw ConfigError(where + ": unknown key");
                }
            } else if (section == "receiver") {
                if (key == "residual_loss_db") {
                    s.receiver_residual_loss_db = parse_double(value, where);
                } else {
                    throw ConfigError(where + ": unknown key");
                }
            } else if (section == "protocol") {
                if (key == "intensities") {
                    s.protocol.intensities.clear();
                    for (const auto& item : split(value, ',')) {
                        const auto colon = item.find(':');
                        if (colon == std::string::npos) {
                            throw ConfigError(where + ": expected mu:probability pairs");
                        }
                        s.protocol.intensities.push_back(
                            {parse_double(trim(item.substr(0, colon)), where),
                             parse_double(trim(item.substr(colon + 1)), where)});
                    }
                } else if (key == "signal_index") {
                    s.protocol.signal_index =
                        static_cast<std::size_t>(parse_double(value, where));
                } else if (key == "clock_rate_hz") {
                    s.protocol.clock_rate_hz = parse_double(value, where);
                } else if (key == "sifting_factor") {
                    s.protocol.sifting_factor = parse_double(value, where);
                } else if (key == "f_ec") {
                    s.protocol.f_ec = parse_double(value, where);
                } else if (key == "e_opt") {
                    s.protocol.e_opt = parse_double(value, where);
                } else {
                    throw ConfigError(where + ": unknown key");
                }
            } else if (section == "alice_data") {
                apply_data_channel(s.alice_data, key, value, where);
            } else if (section == "bob_data") {
                apply_data_channel(s.bob_data, key, value, where);
            } else if (section == "clock") {
                if (key == "wavelength_nm") {
                    s.clock.wavelength = Wavelength::nanometers(parse_double(value, where));
                } else if (key == "pulse_rate_hz") {
                    s.clock.pulse_rate_hz = parse_double(value, where);
                } else if (key == "launch_power_dbm") {
                    s.clock.launch_power_dbm = parse_double(value, where);
                } else if (key == "jitter_table") {
                    s.clock.jitter_table = load_jitter_csv(resolve(value));
                } else {
                    throw ConfigError(where + ": unknown key");
                }
            } else if (section == "raman") {
                if (key == "beta_table") {
                    s.beta = load_beta_csv(resolve(value));
                } else if (key == "backward_form") {
                    if (value == "integral") {
                        s.backward_form = BackwardForm::integral;
                    } else if (value == "paper") {
                        s.backward_form = BackwardForm::paper_literal;
                    } else {
                        throw ConfigError(where + ": backward_form must be integral or paper");
                    }
                } else if (key == "include_clock_raman") {
                    s.include_clock_raman = parse_bool(value, where);
                } else {
                    throw ConfigError(where + ": unknown key");
                }
            } else if (section == "model") {
                if (key == "apply_jitter_penalty") {
                    s.apply_jitter_penalty = parse_bool(value, where);
                } else {
                    throw ConfigError(where + ": unknown key");
                }
            } else if (section == "sweep") {
                if (key == "from_km") {
                    s.sweep.from_km = parse_double(value, where);
                } else if (key == "to_km") {
                    s.sweep.to_km = parse_double(value, where);
                } else if (key == "step_km") {
                    s.sweep.step_km = parse_double(value, where);
                } else {
                    throw ConfigError(where + ": unknown key");
                }
            } else if (section == "mc") {
                if (key == "n_pulses") {
                    s.mc_pulses = static_cast<std::uint64_t>(parse_double(value, where));
                } else if (key == "seed") {
                    s.mc_seed = static_cast<std::uint64_t>(parse_double(value, where));
                } else {
                    throw ConfigError(where + ": unknown key");
                }
            } else {
                throw ConfigError("unknown config section '" + section + "'");
            }
        }
    }
    return s;
}

RamanCoefficientTable load_beta_csv(const std::string& path) {
    RamanCoefficientTable table;
    table.beta_per_km.clear();
    const auto rows = read_csv(path, 4, "pump_nm,direction,beta_per_km,ref_bandwidth_nm");
    double reference = 0.0;
    for (const auto& row : rows) {
        const double pump = parse_double(row[0], path);
        Direction direction;
        if (row[1] == "forward") {
            direction = Direction::alice_to_bob;
        } else if (row[1] == "backward") {
            direction = Direction::bob_to_alice;
        } else {
            throw ConfigError(path + ": direction must be forward or backward, got '" + row[1] + "'");
        }
        const double beta = parse_double(row[2], path);
        if (!(beta >= 0.0)) {
            throw ConfigError(path + ": beta must be nonnegative");
        }
        const double ref = parse_double(row[3], path);
        if (reference == 0.0) {
            reference = ref;
        } else if (std::abs(reference - ref) > 1e-9) {
            throw ConfigError(path + ": all rows must share one reference bandwidth");
        }
        table.beta_per_km[RamanCoefficientTable::Key{pump, direction}] = beta;
    }
    if (!(reference > 0.0)) {
        throw ConfigError(path + ": reference bandwidth must be positive");
    }
    table.reference_bandwidth_nm = reference;
    return table;
}

std::vector<std::pair<double, double>> load_jitter_csv(const std::string& path) {
    std::vector<std::pair<double, double>> table;
    const auto rows = read_csv(path, 2, "received_dbm,jitter_ps");
    for (const auto& row : rows) {
        table.emplace_back(parse_double(row[0], path), parse_double(row[1], path));
    }
    return table;
}

std::vector<RamanSource> active_sources(const Scenario& scenario, double length_km) {
    std::vector<RamanSource> sources;
    sources.push_back({scenario.alice_data.wavelength, scenario.alice_data.direction,
                       operating_launch_dbm(scenario.alice_data, scenario.fiber, scenario.grid,
                                            length_km)});
    sources.push_back({scenario.bob_data.wavelength, scenario.bob_data.direction,
                       operating_launch_dbm(scenario.bob_data, scenario.fiber, scenario.grid,
                                            length_km)});
    if (scenario.include_clock_raman) {
        sources.push_back(
            {scenario.clock.wavelength, Direction::alice_to_bob, scenario.clock.launch_power_dbm});
    }
    return sources;
}

std::vector<std::string> validate(const Scenario& scenario) {
    std::vector<std::string> diagnostics;
    auto complain = [&](const std::string& message) { diagnostics.push_back(message); };

    if (scenario.fiber.attenuation_db_per_km.empty()) {
        complain("fiber.attenuation_db_per_km: table is empty");
    }
    for (const auto& [nm, db] : scenario.fiber.attenuation_db_per_km) {
        if (!(db > 0.0)) {
            complain("fiber.attenuation_db_per_km: entry at " + std::to_string(nm) +
                     " nm must be positive");
        }
    }
    if (!(scenario.fiber.length_km >= 0.0)) {
        complain("fiber.length_km: must be nonnegative");
    }
    if (!(scenario.fiber.connector_loss_db >= 0.0)) {
        complain("fiber.connector_loss_db: must be nonnegative");
    }

    if (!std::is_sorted(scenario.grid.passband_centers.begin(), scenario.grid.passband_centers.end(),
                        [](const Wavelength& a, const Wavelength& b) { return a.nm < b.nm; }) ||
        std::adjacent_find(scenario.grid.passband_centers.begin(),
                           scenario.grid.passband_centers.end(),
                           [](const Wavelength& a, const Wavelength& b) { return a.nm >= b.nm; }) !=
            scenario.grid.passband_centers.end()) {
        complain("grid.passband_centers_nm: must be strictly increasing");
    }
    if (scenario.grid.insertion_loss_db.size() != scenario.grid.passband_centers.size()) {
        complain("grid.insertion_loss_db: needs one entry per passband");
    }
    for (const double loss : scenario.grid.insertion_loss_db) {
        if (!(loss >= 0.0 && loss <= 3.0)) {
            complain("grid.insertion_loss_db: entries must lie in [0, 3] dB");
        }
    }
    if (!(scenario.quantum.nbf_bandwidth_nm > 0.0 &&
          scenario.quantum.nbf_bandwidth_nm < scenario.grid.passband_width_nm)) {
        complain("quantum.nbf_bandwidth_nm: must be positive and below the passband width");
    }

    try {
        scenario.detector.check();
    } catch (const std::exception& e) {
        complain(std::string("detector: ") + e.what());
    }
    try {
        scenario.protocol.check();
    } catch (const std::exception& e) {
        complain(std::string("protocol: ") + e.what());
    }

    const double gate_hz = 1e12 / scenario.detector.gate_period_ps;
    if (std::abs(gate_hz - scenario.protocol.clock_rate_hz) > 1e-6 * gate_hz) {
        complain("detector.gate_period_ps: detector gating disagrees with protocol.clock_rate_hz");
    }

    // Every active channel must sit in a passband, carry attenuation data
    // and (for classical lasers) a Raman coefficient for its direction.
    struct NamedChannel {
        const char* name;
        Wavelength wavelength;
        Direction direction;
        bool classical;
    };
    const NamedChannel channels[] = {
        {"quantum.center_nm", scenario.quantum.center, Direction::alice_to_bob, false},
        {"alice_data.wavelength_nm", scenario.alice_data.wavelength,
         scenario.alice_data.direction, true},
        {"bob_data.wavelength_nm", scenario.bob_data.wavelength, scenario.bob_data.direction, true},
        {"clock.wavelength_nm", scenario.clock.wavelength, Direction::alice_to_bob,
         scenario.include_clock_raman},
    };
    for (const auto& channel : channels) {
        if (scenario.grid.passband_index(channel.wavelength) < 0) {
            complain(std::string(channel.name) + ": not inside any CWDM passband");
        }
        try {
            attenuation_db_per_km(scenario.fiber, channel.wavelength);
        } catch (const std::exception&) {
            complain(std::string(channel.name) + ": outside the fiber attenuation table hull");
        }
        if (channel.classical && !scenario.beta.has(channel.wavelength, channel.direction)) {
            complain(std::string(channel.name) + ": no Raman coefficient for pump " +
                     std::to_string(channel.wavelength.nm) + " nm (" +
                     to_string(channel.direction) + ")");
        }
    }

    if (scenario.clock.jitter_table.empty()) {
        complain("clock.jitter_table: table is empty");
    } else {
        for (std::size_t i = 1; i < scenario.clock.jitter_table.size(); ++i) {
            if (scenario.clock.jitter_table[i].first <= scenario.clock.jitter_table[i - 1].first) {
                complain("clock.jitter_table: received power must be strictly increasing");
                break;
            }
            if (scenario.clock.jitter_table[i].second > scenario.clock.jitter_table[i - 1].second) {
                complain("clock.jitter_table: jitter must be nonincreasing with power");
                break;
            }
        }
    }

    if (!(scenario.sweep.step_km > 0.0)) {
        complain("sweep.step_km: must be positive");
    }
    if (!(scenario.receiver_residual_loss_db >= 0.0)) {
        complain("receiver.residual_loss_db: must be nonnegative");
    }
    return diagnostics;
}

} // namespace qkdsim
