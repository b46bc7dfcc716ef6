#include "qkdsim/raman.hpp"

#include <cmath>

namespace qkdsim {

namespace {
constexpr double kDegenerateAlphaTol = 1e-9; // per km
constexpr double kPumpMatchTolNm = 1e-6;
} // namespace

const char* to_string(Direction d) {
    return d == Direction::alice_to_bob ? "alice_to_bob" : "bob_to_alice";
}

double RamanCoefficientTable::beta(Wavelength pump, Direction direction,
                                   double collection_bandwidth_nm) const {
    for (const auto& [key, value] : beta_per_km) {
        if (key.direction == direction && std::abs(key.pump_nm - pump.nm) < kPumpMatchTolNm) {
            return value * (collection_bandwidth_nm / reference_bandwidth_nm);
        }
    }
    throw ConfigError("no Raman coefficient for pump " + std::to_string(pump.nm) +
                      " nm, direction " + to_string(direction));
}

bool RamanCoefficientTable::has(Wavelength pump, Direction direction) const {
    for (const auto& entry : beta_per_km) {
        if (entry.first.direction == direction &&
            std::abs(entry.first.pump_nm - pump.nm) < kPumpMatchTolNm) {
            return true;
        }
    }
    return false;
}

double natural_attenuation_per_km(double db_per_km) {
    return db_per_km * std::log(10.0) / 10.0;
}

double forward_scatter_w(double beta_per_km, double launch_w, double alpha_d_per_km,
                         double alpha_q_per_km, double length_km) {
    if (!(length_km >= 0.0)) {
        throw DomainError("fiber length must be nonnegative");
    }
    const double delta = alpha_q_per_km - alpha_d_per_km;
    if (std::abs(delta) < kDegenerateAlphaTol) {
        return beta_per_km * launch_w * length_km * std::exp(-alpha_q_per_km * length_km);
    }
    return beta_per_km * launch_w * std::exp(-alpha_q_per_km * length_km) *
           std::expm1(delta * length_km) / delta;
}

double backward_scatter_w(double beta_per_km, double launch_w, double alpha_d_per_km,
                          double alpha_q_per_km, double length_km, BackwardForm form) {
    if (!(length_km >= 0.0)) {
        throw DomainError("fiber length must be nonnegative");
    }
    const double alpha_sum = alpha_d_per_km + alpha_q_per_km;
    const double growth = -std::expm1(-alpha_sum * length_km); // 1 - e^(-sum L)
    if (form == BackwardForm::paper_literal) {
        return beta_per_km * launch_w * growth;
    }
    return beta_per_km * launch_w * growth / alpha_sum;
}

double forward_scatter_argmax_km(double alpha_d_per_km, double alpha_q_per_km) {
    if (!(alpha_d_per_km > alpha_q_per_km)) {
        throw DomainError("forward scatter has an interior maximum only for alpha_d > alpha_q");
    }
    return std::log(alpha_q_per_km / alpha_d_per_km) / (alpha_q_per_km - alpha_d_per_km);
}

NoiseBudget total_raman_into_receiver(const std::vector<RamanSource>& sources,
                                      const FiberSpec& fiber, const CwdmGrid& grid,
                                      const QuantumChannelSpec& quantum,
                                      const RamanCoefficientTable& table, double length_km,
                                      BackwardForm form) {
    const double alpha_q = natural_attenuation_per_km(attenuation_db_per_km(fiber, quantum.center));
    const double demux_transmission = db_to_linear(-grid.insertion_loss_for(quantum.center));

    NoiseBudget budget;
    for (const auto& source : sources) {
        const double alpha_d =
            natural_attenuation_per_km(attenuation_db_per_km(fiber, source.pump));
        const double beta = table.beta(source.pump, source.direction, grid.passband_width_nm);
        // Launch power into the fiber after the launch-side mux.
        const double launch_w = OpticalPower::from_dbm(source.launch_dbm).watts *
                                db_to_linear(-grid.insertion_loss_for(source.pump));
        if (source.direction == Direction::alice_to_bob) {
            budget.forward_w +=
                demux_transmission * forward_scatter_w(beta, launch_w, alpha_d, alpha_q, length_km);
        } else {
            budget.backward_w += demux_transmission * backward_scatter_w(beta, launch_w, alpha_d,
                                                                         alpha_q, length_km, form);
        }
    }
    budget.raman_power_w = budget.forward_w + budget.backward_w;
    budget.after_nbf_w = budget.raman_power_w * db_to_linear(-quantum.nbf_rejection_db);
    return budget;
}

double counts_per_gate(double noise_power_at_detector_w, Wavelength lambda_q,
                       double clock_rate_hz, const DetectorSpec& detector) {
    if (!(clock_rate_hz > 0.0)) {
        throw DomainError("clock rate must be positive");
    }
    if (!(noise_power_at_detector_w >= 0.0)) {
        throw DomainError("noise power must be nonnegative");
    }
    const double photons_per_second = noise_power_at_detector_w / photon_energy_joules(lambda_q);
    const double per_gate = photons_per_second / clock_rate_hz * detector.eta_async;
    return per_gate > 1.0 ? 1.0 : per_gate;
}

ToleranceResult raman_tolerance_check(double signal_w, double noise_w) {
    if (!(signal_w > 0.0)) {
        throw DomainError("tolerance check requires a positive signal power");
    }
    if (noise_w <= 0.0) {
        return ToleranceResult{true, kToleranceMarginCapDb};
    }
    const double margin = linear_to_db(signal_w / noise_w) - kRamanToleranceDb;
    return ToleranceResult{margin >= 0.0, margin};
}

} // namespace qkdsim
