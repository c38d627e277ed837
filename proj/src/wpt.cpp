#include "bswpt/wpt.hpp"

#include <cmath>

namespace bswpt {

BeamSignal retro_beam(const cvec& x_r, double pt) {
    if (!(pt > 0.0)) throw invalid_parameter_error("retro_beam: pt must be > 0");
    const double norm = vec_norm(x_r);
    if (norm == 0.0)
        throw degenerate_input_error("retro_beam: reference signal has zero norm");
    BeamSignal beam;
    beam.x_t.resize(x_r.size());
    const double scale = std::sqrt(pt) / norm;
    for (std::size_t k = 0; k < x_r.size(); ++k) beam.x_t[k] = std::conj(x_r[k]) * scale;
    return beam;
}

double incident_power_exact(const CorrelatorOutput& out, const ChannelRealization& ch,
                            const SystemParams& p, const DerivedParams& d) {
    const BeamSignal beam = retro_beam(out.x_r, p.pt);
    KahanSum re, im;
    for (std::size_t k = 0; k < ch.f.size(); ++k) {
        const cplx t = ch.f[k] * beam.x_t[k];
        re.add(t.real());
        im.add(t.imag());
    }
    const cplx r{re.value(), im.value()};
    return d.gamma2 * std::norm(r);
}

double incident_power_asymptotic(PowerScenario scenario, const MuNu& mn, double g_mag2,
                                 const SystemParams& p, const DerivedParams& d) {
    const double array_gain = static_cast<double>(p.m) + 1.0 / p.m_f;
    const double signal = d.gamma1 * d.gamma2 * g_mag2 * mn.mu;
    const double noise = p.sigma_n2 * static_cast<double>(p.ns) / (p.ts * p.ps);
    const double scale = d.gamma2 * p.pt;

    switch (scenario) {
        case PowerScenario::PnLe: {
            const double r = static_cast<double>(p.ns) / static_cast<double>(p.nc);
            const double ambient = d.gamma3 * mn.nu * r * r;
            return scale * (signal * array_gain + ambient + noise) / (signal + ambient + noise);
        }
        case PowerScenario::PnGe: {
            const double ambient = d.gamma3 * mn.nu;
            return scale * (signal * array_gain + ambient + noise) / (signal + ambient + noise);
        }
        case PowerScenario::Balanced:
            return scale * (signal * array_gain + noise) / (signal + noise);
        case PowerScenario::Offset: {
            const double theta = offset_scale(p.t_off, p.tc);
            const double theta2 = theta * theta;
            return scale * (theta2 * signal * array_gain + noise) / (signal + noise);
        }
        case PowerScenario::Interference: {
            const double r = static_cast<double>(p.ns) / static_cast<double>(p.nc);
            const double ambient = p.ps * d.gamma3 * mn.nu * r * r;
            const double intf = p.sigma_i2 * static_cast<double>(p.ns) / p.ts;
            const double noise_i = p.sigma_n2 * static_cast<double>(p.ns) / p.ts;
            const double s = p.ps * d.gamma1 * d.gamma2 * g_mag2 * mn.mu;
            return scale * (s * array_gain + ambient + intf + noise_i) /
                   (s + ambient + intf + noise_i);
        }
    }
    throw invalid_parameter_error("incident_power_asymptotic: unknown scenario");
}

double harvest(double q_rf, const HarvesterModel& h) {
    if (q_rf < 0.0) throw invalid_parameter_error("harvest: q_rf must be >= 0");
    auto sigmoid = [](double x) {
        if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
        const double e = std::exp(x);
        return e / (1.0 + e);
    };
    const double floor_term = sigmoid(-h.a0 * h.b0);
    return h.c0 * (sigmoid(h.a0 * (q_rf - h.b0)) - floor_term) / (1.0 - floor_term);
}

}  // namespace bswpt
