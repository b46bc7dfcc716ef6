#pragma once

#include <string>
#include <vector>

#include "qkdsim/decoy.hpp"
#include "qkdsim/scenario.hpp"

namespace qkdsim {

/// Everything derived for one fiber length before the key-rate math runs.
struct OperatingDerivation {
    double length_km = 0.0;
    double jitter_ps = 0.0;
    double jitter_factor = 1.0;
    bool jitter_clamped = false;
    double channel_transmission = 1.0; // Alice output -> receiver input, timing included
    double eta_bob = 1.0;
    std::vector<RamanSource> sources;
    NoiseBudget budget;
    double noise_at_detector_w = 0.0;
    double signal_at_receiver_w = 0.0; // quantum signal power at the demux output
    ChannelOperatingPoint point;
};

/// One sweep record; the scalar fields plus the rate report form the CSV row.
struct LinkRow {
    double length_km = 0.0;
    double raman_fwd_w = 0.0;
    double raman_bwd_w = 0.0;
    double raman_after_filters_w = 0.0;
    double p_r = 0.0;
    KeyRateReport rates;
    double tolerance_margin_db = 0.0;

    OperatingDerivation derivation;
    LinkObservables observables;
    DecoyEstimate decoy;
    SessionCounts counts;
};

OperatingDerivation derive_operating_point(const Scenario& scenario, double length_km);

LinkRow evaluate_length(const Scenario& scenario, double length_km);

/// One row per sweep point, ordered by length. Points are independent;
/// results do not depend on evaluation order.
std::vector<LinkRow> run_sweep(const Scenario& scenario);

std::string sweep_csv(const std::vector<LinkRow>& rows);
std::string raman_csv(const std::vector<LinkRow>& rows);
std::string keyrate_text(const Scenario& scenario, double length_km);
std::string mc_csv(const Scenario& scenario, double length_km, std::uint64_t n_pulses,
                   std::uint64_t seed);

} // namespace qkdsim
