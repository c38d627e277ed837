#pragma once

// Correlator (despreading) output, computed two ways: exact closed forms
// valid in the synchronized divisibility regimes, and a brute-force
// waveform integrator that handles timing offset and symbol-duration
// mismatch. All involved signals are piecewise constant, so the
// integrator sums interval-weighted products over the exact breakpoint
// partition; there is no quadrature error.

#include <vector>

#include "bswpt/config.hpp"
#include "bswpt/stochastics.hpp"
#include "bswpt/training.hpp"
#include "bswpt/types.hpp"

namespace bswpt {

struct CorrelatorOutput {
    cvec x_s;      // desired backscatter component (a scalar multiple of f)
    cvec x_i;      // direct-link ambient component (a scalar multiple of h)
    cvec u_tilde;  // neighbouring-source interference
    cvec n_tilde;  // thermal noise
    cvec x_r;      // elementwise sum of the four
};

// Scalar statistics entering the closed-form power ratios.
struct MuNu {
    double mu = 0.0;  // |sum_i s_i|^2
    double nu = 0.0;  // |sum over per-window chip-weighted symbols|^2
};

// Unit-amplitude correlation scalars: x_s = sqrt(g1*g2*ps)*g*backscatter*f
// and x_i = sqrt(g3*ps)*ambient*h.
struct CorrelatorScalars {
    cplx backscatter;
    cplx ambient;
};

// Windowed sums per the divisibility regime (ns | nc or nc | ns). Throws
// regime_error when neither divisibility holds.
MuNu mu_nu(const AmbientFrame& frame, const TrainingSequence& seq);

CorrelatorScalars closed_form_scalars(const SystemParams& p, const ChannelRealization& ch,
                                      const AmbientFrame& frame, const TrainingSequence& seq);

// Same scalars from the breakpoint integrator. ts_actual is the true
// symbol duration seen on air; the local replica is delayed by t_off and
// periodically extended so the correlation window stays [0, nc*tc].
CorrelatorScalars waveform_scalars(const SystemParams& p, const ChannelRealization& ch,
                                   const AmbientFrame& frame, const TrainingSequence& seq,
                                   double t_off, double ts_actual);

// Full correlator outputs; noise and interference vectors come from the
// stochastics module (zero vectors for noise-free runs).
CorrelatorOutput correlate_closed_form(const SystemParams& p, const DerivedParams& d,
                                       const ChannelRealization& ch, const AmbientFrame& frame,
                                       const TrainingSequence& seq, cvec u_tilde, cvec n_tilde);

CorrelatorOutput correlate_waveform(const SystemParams& p, const DerivedParams& d,
                                    const ChannelRealization& ch, const AmbientFrame& frame,
                                    const TrainingSequence& seq, double t_off, double ts_actual,
                                    cvec u_tilde, cvec n_tilde);

// Scale applied to the desired component by a replica delay, for
// per-chip-alternating sequences: the 2*tc-periodic triangle wave
// 1 - 2*t_off/tc on [0, tc], 2*(t_off - tc)/tc - 1 on (tc, 2*tc].
double offset_scale(double t_off, double tc);

// One row of the integrator's partition, for diagnostics.
struct BreakpointRow {
    double t0 = 0.0;
    double t1 = 0.0;
    int recv_chip = 0;     // c(t) on the interval
    int replica_chip = 0;  // delayed local replica on the interval
    cplx symbol;           // ambient symbol value on the interval
};

std::vector<BreakpointRow> breakpoint_partition(const SystemParams& p,
                                                const AmbientFrame& frame,
                                                const TrainingSequence& seq, double t_off,
                                                double ts_actual);

}  // namespace bswpt
