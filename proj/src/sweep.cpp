#include "qkdsim/sweep.hpp"

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <sstream>

#include "qkdsim/montecarlo.hpp"

namespace qkdsim {

namespace {

constexpr double kDbmSentinel = -999.0;

double dbm_or_sentinel(double watts) {
    return watts > 0.0 ? OpticalPower{watts}.dbm() : kDbmSentinel;
}

std::string format_row(const char* format, ...) {
    char buffer[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buffer, sizeof(buffer), format, args);
    va_end(args);
    return buffer;
}

} // namespace

OperatingDerivation derive_operating_point(const Scenario& scenario, double length_km) {
    OperatingDerivation d;
    d.length_km = length_km;

    const JitterResult jitter =
        clock_jitter_at(scenario.clock, scenario.fiber, scenario.grid, length_km);
    d.jitter_ps = jitter.jitter_rms_ps;
    d.jitter_clamped = jitter.clamped;
    d.jitter_factor = scenario.apply_jitter_penalty
                          ? jitter_efficiency_factor(scenario.detector, jitter.jitter_rms_ps)
                          : 1.0;

    // Per-photon survival from Alice's encoder output to the receiver input:
    // launch-side mux, fiber, connectors, plus the timing penalty.
    const double fiber_db =
        attenuation_db_per_km(scenario.fiber, scenario.quantum.center) * length_km;
    const double launch_path_db = scenario.grid.insertion_loss_for(scenario.quantum.center) +
                                  scenario.fiber.connector_loss_db;
    d.channel_transmission = db_to_linear(-(fiber_db + launch_path_db)) * d.jitter_factor;
    d.eta_bob = scenario.receiver().eta_bob();

    d.sources = active_sources(scenario, length_km);
    d.budget = total_raman_into_receiver(d.sources, scenario.fiber, scenario.grid,
                                         scenario.quantum, scenario.beta, length_km,
                                         scenario.backward_form);
    d.noise_at_detector_w =
        d.budget.after_nbf_w * db_to_linear(-scenario.receiver_residual_loss_db);

    const double signal_launch_w =
        flux_to_power(PhotonFlux::of(scenario.protocol.signal().mu, scenario.protocol.clock_rate_hz),
                      scenario.quantum.center)
            .watts;
    d.signal_at_receiver_w =
        signal_launch_w * db_to_linear(-(fiber_db + launch_path_db +
                                         scenario.grid.insertion_loss_for(scenario.quantum.center)));

    d.point.channel_transmission = d.channel_transmission;
    d.point.eta_bob = d.eta_bob;
    d.point.p_dark = scenario.detector.dark_per_gate;
    d.point.p_raman = counts_per_gate(d.noise_at_detector_w, scenario.quantum.center,
                                      scenario.protocol.clock_rate_hz, scenario.detector);
    d.point.p_afterpulse = scenario.detector.afterpulse_prob;
    return d;
}

LinkRow evaluate_length(const Scenario& scenario, double length_km) {
    LinkRow row;
    row.length_km = length_km;
    row.derivation = derive_operating_point(scenario, length_km);
    const auto& d = row.derivation;
    const auto& protocol = scenario.protocol;

    row.raman_fwd_w = d.budget.forward_w;
    row.raman_bwd_w = d.budget.backward_w;
    row.raman_after_filters_w = d.budget.after_nbf_w;
    row.p_r = d.point.p_raman;

    const double mu_signal = protocol.signal().mu;
    const double signal_term = mu_signal * d.channel_transmission * d.eta_bob;
    const double noise = d.point.p_dark + d.point.p_raman;
    const double e_noise = noise_qber_component(mu_signal, d.channel_transmission, d.eta_bob,
                                                d.point.p_dark, d.point.p_raman);
    row.rates.qber_floor = protocol.e_opt + 0.5 * scenario.detector.afterpulse_prob;
    row.rates.qber = total_qber(protocol.e_opt, scenario.detector.afterpulse_prob, e_noise);
    if (noise > 0.0) {
        row.rates.qber_dark = 0.5 * d.point.p_dark / (signal_term + noise);
        row.rates.qber_raman = 0.5 * d.point.p_raman / (signal_term + noise);
    }

    row.observables = transmittances(protocol, d.point);
    row.rates.sifted_bps = sifted_rate_bps(protocol, row.observables);

    std::vector<ClassObservation> observations;
    observations.reserve(protocol.intensities.size());
    for (std::size_t i = 0; i < protocol.intensities.size(); ++i) {
        observations.push_back(
            {row.observables.transmittance[i], row.observables.qber_per_class[i]});
    }
    row.decoy = decoy_estimate(protocol, observations);

    const double signal_pulses_per_s =
        protocol.clock_rate_hz * protocol.signal().probability * protocol.sifting_factor;
    row.counts.duration_s = 1.0;
    row.counts.sifted_bits =
        signal_pulses_per_s * row.observables.transmittance[protocol.signal_index];
    row.counts.single_photon_bits =
        signal_pulses_per_s * poisson_pmf(1, mu_signal) * row.decoy.y1;
    row.counts.zero_photon_bits = signal_pulses_per_s * poisson_pmf(0, mu_signal) * row.decoy.y0;
    row.counts.qber = row.rates.qber;
    row.counts.single_photon_qber = row.decoy.e1;
    row.rates.secure_bps = secure_rate_bps(row.counts, protocol.f_ec);

    // Tolerance is judged where it matters: detected noise against detected
    // signal, i.e. after spectral and temporal filtering.
    row.tolerance_margin_db =
        raman_tolerance_check(signal_term, d.point.p_raman).margin_db;
    return row;
}

std::vector<LinkRow> run_sweep(const Scenario& scenario) {
    std::vector<LinkRow> rows;
    for (const double length : scenario.sweep.points()) {
        rows.push_back(evaluate_length(scenario, length));
    }
    return rows;
}

std::string sweep_csv(const std::vector<LinkRow>& rows) {
    std::string out =
        "length_km,raman_fwd_w,raman_bwd_w,raman_after_filters_w,p_r,qber,qber_floor,"
        "qber_dark,qber_raman,sifted_bps,secure_bps,tolerance_margin_db\n";
    for (const auto& row : rows) {
        out += format_row("%.6g,%.9e,%.9e,%.9e,%.9e,%.9g,%.9g,%.9g,%.9g,%.9e,%.9e,%.4f\n",
                          row.length_km, row.raman_fwd_w, row.raman_bwd_w,
                          row.raman_after_filters_w, row.p_r, row.rates.qber, row.rates.qber_floor,
                          row.rates.qber_dark, row.rates.qber_raman, row.rates.sifted_bps, row.rates.secure_bps,
                          row.tolerance_margin_db);
    }
    return out;
}

std::string raman_csv(const std::vector<LinkRow>& rows) {
    std::string out =
        "length_km,raman_fwd_w,raman_fwd_dbm,raman_bwd_w,raman_bwd_dbm,raman_total_w,"
        "raman_total_dbm,after_nbf_w,after_nbf_dbm,p_r,signal_at_receiver_w,"
        "signal_at_receiver_dbm,tolerance_margin_db\n";
    for (const auto& row : rows) {
        const double total = row.derivation.budget.raman_power_w;
        out += format_row(
            "%.6g,%.9e,%.4f,%.9e,%.4f,%.9e,%.4f,%.9e,%.4f,%.9e,%.9e,%.4f,%.4f\n",
            row.length_km, row.raman_fwd_w, dbm_or_sentinel(row.raman_fwd_w), row.raman_bwd_w,
            dbm_or_sentinel(row.raman_bwd_w), total, dbm_or_sentinel(total),
            row.raman_after_filters_w, dbm_or_sentinel(row.raman_after_filters_w), row.p_r,
            row.derivation.signal_at_receiver_w,
            dbm_or_sentinel(row.derivation.signal_at_receiver_w), row.tolerance_margin_db);
    }
    return out;
}

std::string keyrate_text(const Scenario& scenario, double length_km) {
    const LinkRow row = evaluate_length(scenario, length_km);
    const auto& d = row.derivation;
    std::ostringstream out;
    char line[256];

    auto emit = [&](const char* format, auto... values) {
        std::snprintf(line, sizeof(line), format, values...);
        out << line << '\n';
    };

    emit("length_km             %.3f", length_km);
    emit("channel_transmission  %.6e", d.channel_transmission);
    emit("eta_bob               %.6f", d.eta_bob);
    emit("clock_jitter_ps       %.3f%s", d.jitter_ps, d.jitter_clamped ? " (clamped)" : "");
    emit("jitter_factor         %.6f", d.jitter_factor);
    for (const auto& source : d.sources) {
        emit("launch[%s %.0f nm]  %.2f dBm", to_string(source.direction), source.pump.nm,
             source.launch_dbm);
    }
    emit("raman_fwd_w           %.6e", row.raman_fwd_w);
    emit("raman_bwd_w           %.6e", row.raman_bwd_w);
    emit("raman_after_nbf_w     %.6e", row.raman_after_filters_w);
    emit("p_dark                %.6e", d.point.p_dark);
    emit("p_raman               %.6e", d.point.p_raman);
    for (std::size_t i = 0; i < scenario.protocol.intensities.size(); ++i) {
        char label[32];
        std::snprintf(label, sizeof(label), "T[mu=%.4g]", scenario.protocol.intensities[i].mu);
        emit("%-22s%.6e  E=%.6f", label, row.observables.transmittance[i],
             row.observables.qber_per_class[i]);
    }
    emit("decoy_y0              %.6e", row.decoy.y0);
    emit("decoy_y1              %.6e", row.decoy.y1);
    emit("decoy_e1              %.6f", row.decoy.e1);
    emit("qber                  %.6f", row.rates.qber);
    emit("qber_floor            %.6f", row.rates.qber_floor);
    emit("qber_dark             %.6f", row.rates.qber_dark);
    emit("qber_raman            %.6f", row.rates.qber_raman);
    emit("sifted_bps            %.6e", row.rates.sifted_bps);
    emit("secure_bps            %.6e", row.rates.secure_bps);
    emit("tolerance_margin_db   %.4f", row.tolerance_margin_db);
    return out.str();
}

std::string mc_csv(const Scenario& scenario, double length_km, std::uint64_t n_pulses,
                   std::uint64_t seed) {
    const OperatingDerivation d = derive_operating_point(scenario, length_km);
    const McSessionResult mc =
        monte_carlo_session(scenario.protocol, d.point, n_pulses, seed);
    const LinkObservables model = transmittances(scenario.protocol, d.point);

    std::string out =
        "class,mu,pulses,clicks,t_empirical,t_model,sifted,sifted_errors,e_empirical,e_model\n";
    std::uint64_t total_clicks = 0;
    double t_model_mean = 0.0;
    for (std::size_t i = 0; i < mc.per_class.size(); ++i) {
        const auto& stats = mc.per_class[i];
        total_clicks += stats.clicks;
        t_model_mean += scenario.protocol.intensities[i].probability * model.transmittance[i];
        out += format_row("%zu,%.6g,%llu,%llu,%.9e,%.9e,%llu,%llu,%.9g,%.9g\n", i,
                          scenario.protocol.intensities[i].mu,
                          static_cast<unsigned long long>(stats.pulses),
                          static_cast<unsigned long long>(stats.clicks),
                          stats.empirical_transmittance(), model.transmittance[i],
                          static_cast<unsigned long long>(stats.sifted),
                          static_cast<unsigned long long>(stats.sifted_errors),
                          stats.empirical_qber(), model.qber_per_class[i]);
    }
    const double e_noise =
        noise_qber_component(scenario.protocol.signal().mu, d.point.channel_transmission,
                             d.point.eta_bob, d.point.p_dark, d.point.p_raman);
    out += format_row("all,,%llu,%llu,%.9e,%.9e,%llu,%llu,%.9g,%.9g\n",
                      static_cast<unsigned long long>(mc.pulses),
                      static_cast<unsigned long long>(total_clicks),
                      mc.pulses == 0 ? 0.0
                                     : static_cast<double>(total_clicks) /
                                           static_cast<double>(mc.pulses),
                      t_model_mean, static_cast<unsigned long long>(mc.sifted_bits),
                      static_cast<unsigned long long>(mc.sifted_errors), mc.empirical_qber(),
                      total_qber(scenario.protocol.e_opt, scenario.detector.afterpulse_prob,
                                 e_noise));
    return out;
}

} // namespace qkdsim
