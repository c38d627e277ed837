#pragma once

// Random primitives: Nakagami-m fading draws, ambient symbol frames and
// post-correlator noise/interference vectors. All samplers are pure
// functions of (parameters, stream); one stream is never shared between
// workers.

#include <cstdint>

#include "bswpt/config.hpp"
#include "bswpt/rng.hpp"
#include "bswpt/types.hpp"

namespace bswpt {

// One channel draw, held constant over a backscatter + power-transfer slot.
struct ChannelRealization {
    cplx g;   // AS -> ER
    cvec f;   // ER -> ET, length m
    cvec h;   // AS -> ET, length m
};

// Ambient symbols for one backscatter phase; each element is CN(0,1).
// The sqrt(ps) amplitude scaling is applied at signal construction.
struct AmbientFrame {
    cvec symbols;
    double ps = 1.0;  // W
    double ts = 0.0;  // s
};

struct TrialSeed {
    std::uint64_t master_seed = 0;
    std::uint64_t trial_index = 0;
};

// n i.i.d. elements with |x|^2 ~ Gamma(shape m, scale 1/m) (unit mean) and
// independent uniform phase. At m = 1 this law is exactly CN(0,1).
cvec sample_nakagami_vector(double m, long n, RngStream& rng);

ChannelRealization sample_channels(const SystemParams& p, RngStream& g_stream,
                                   RngStream& f_stream, RngStream& h_stream);

AmbientFrame sample_ambient(const SystemParams& p, RngStream& rng);

// Frame with an explicit symbol count; the duration-mismatch path needs
// however many actual symbols cover the backscatter phase.
AmbientFrame sample_ambient_n(const SystemParams& p, long count, double ts_actual,
                              RngStream& rng);

// m i.i.d. CN(0, variance_scale) elements. Both the thermal noise
// (sigma_n2/(nc*tc)) and the neighbouring interference (sigma_i2/(nc*tc))
// at the correlator output use this. `bypass` returns an exact zero vector
// for noise-free oracle runs.
cvec sample_post_correlator_noise(double variance_scale, long m, RngStream& rng,
                                  bool bypass = false);

}  // namespace bswpt
