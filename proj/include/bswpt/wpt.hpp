#pragma once

// Power-transfer phase: retrodirective beam construction from the
// correlator output, incident RF power at the receiver (exact and
// large-array closed forms) and the nonlinear harvester.

#include "bswpt/config.hpp"
#include "bswpt/correlator.hpp"
#include "bswpt/stochastics.hpp"
#include "bswpt/types.hpp"

namespace bswpt {

struct BeamSignal {
    cvec x_t;  // per-antenna baseband amplitudes, ||x_t||^2 == pt
};

// Conjugate of the reference signal scaled to total power pt. Throws
// degenerate_input_error on an all-zero reference.
BeamSignal retro_beam(const cvec& x_r, double pt);

// |sqrt(gamma2) * f^T x_t|^2 with x_t built from out.x_r.
double incident_power_exact(const CorrelatorOutput& out, const ChannelRealization& ch,
                            const SystemParams& p, const DerivedParams& d);

// Large-array closed forms. The array size m stays finite in the
// expressions; only the cross-term suppressions are asymptotic.
enum class PowerScenario {
    PnLe,          // pseudo-noise training, ns <= nc
    PnGe,          // pseudo-noise training, ns >= nc
    Balanced,      // per-symbol balanced training, ambient term cancelled
    Offset,        // balanced training with a replica delay of p.t_off
    Interference,  // balanced/PN training plus neighbouring-source interference
};

double incident_power_asymptotic(PowerScenario scenario, const MuNu& mn, double g_mag2,
                                 const SystemParams& p, const DerivedParams& d);

// Sigmoid harvester; q(0) = 0 exactly, q -> c0 in saturation. Evaluated in
// a branch form that cannot overflow for large inputs.
double harvest(double q_rf, const HarvesterModel& h);

}  // namespace bswpt
