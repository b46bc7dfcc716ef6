#pragma once

#include "qkdsim/quantities.hpp"

namespace qkdsim {

/// Gated self-differencing single-photon detector.
///
/// eta_sync is the peak efficiency for photons synchronized with the gate;
/// eta_async the efficiency for photons arriving at random times. Dark counts
/// are per gate, summed over both receiver detectors.
struct DetectorSpec {
    double eta_sync = 0.20;
    double eta_async = 0.0229630707;
    double active_fwhm_ps = 100.0;
    double gate_period_ps = 1000.0;
    double dark_per_gate = 0.0;
    double afterpulse_prob = 0.0;

    void check() const;
};

/// Quantum receiver: detector plus the optical loss between the demux input
/// and the detector (demux insertion, NBF insertion, interferometer).
struct ReceiverSpec {
    DetectorSpec detector;
    double optical_loss_db = 0.0;

    /// eta_sync * 10^(-optical_loss_db/10)
    double eta_bob() const;
};

/// Ratio of synchronized to random-arrival efficiency in dB. An eta_async of
/// zero is reported as the +infinity sentinel.
double temporal_rejection_db(const DetectorSpec& detector);

/// Efficiency retained when photon arrival jitters against the acceptance
/// window: Gaussian overlap between an arrival spread of sigma = jitter_rms
/// and the window of the given FWHM, floored at eta_async/eta_sync for fully
/// random arrivals. Equals 1 at zero jitter, nonincreasing in jitter.
double jitter_efficiency_factor(const DetectorSpec& detector, double jitter_rms_ps);

} // namespace qkdsim
