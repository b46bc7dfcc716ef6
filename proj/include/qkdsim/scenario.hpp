#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qkdsim/classical.hpp"
#include "qkdsim/detector.hpp"
#include "qkdsim/fiber.hpp"
#include "qkdsim/keyrate.hpp"
#include "qkdsim/raman.hpp"

namespace qkdsim {

struct SweepRange {
    double from_km = 0.0;
    double to_km = 100.0;
    double step_km = 5.0;

    /// Lengths from from_km to to_km inclusive; empty when from > to.
    std::vector<double> points() const;
};

/// Complete simulation input: fiber plant, CWDM plan, receiver, protocol,
/// classical channels, Raman coefficients and the sweep definition.
struct Scenario {
    FiberSpec fiber;
    CwdmGrid grid;
    QuantumChannelSpec quantum;
    DetectorSpec detector;
    double receiver_residual_loss_db = 0.0; // interferometer + receiver plumbing
    DecoyProtocolSpec protocol;
    DataChannelSpec alice_data;
    DataChannelSpec bob_data;
    ClockChannelSpec clock;
    RamanCoefficientTable beta;
    BackwardForm backward_form = BackwardForm::integral;
    bool include_clock_raman = true;
    bool apply_jitter_penalty = true;
    SweepRange sweep;
    std::uint64_t mc_pulses = 10000000;
    std::uint64_t mc_seed = 42;

    /// Receiver internals as seen by the quantum signal: demux insertion,
    /// NBF insertion and the residual receiver loss in front of the detector.
    ReceiverSpec receiver() const;
};

/// The calibrated reference configuration: paper-reported constants where
/// available, fitted values (marked in the fixtures) elsewhere.
Scenario default_scenario();

/// Load a scenario from an INI-style config file; keys not present keep
/// their defaults. Fixture paths are resolved relative to the config file.
Scenario load_scenario(const std::string& path);

/// Raman coefficient fixture: CSV `pump_nm,direction,beta_per_km,ref_bandwidth_nm`.
RamanCoefficientTable load_beta_csv(const std::string& path);

/// Clock jitter fixture: CSV `received_dbm,jitter_ps`.
std::vector<std::pair<double, double>> load_jitter_csv(const std::string& path);

/// All invariant violations of the scenario, one line each, prefixed with
/// the offending field path. Empty means the scenario is valid.
std::vector<std::string> validate(const Scenario& scenario);

/// Active classical lasers at the given length (launch powers resolved).
std::vector<RamanSource> active_sources(const Scenario& scenario, double length_km);

} // namespace qkdsim
