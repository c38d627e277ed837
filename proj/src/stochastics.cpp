#include "bswpt/stochastics.hpp"

#include <cmath>

namespace bswpt {

cvec sample_nakagami_vector(double m, long n, RngStream& rng) {
    if (m < 0.5) throw invalid_parameter_error("sample_nakagami_vector: m must be >= 0.5");
    if (n < 1) throw invalid_parameter_error("sample_nakagami_vector: n must be >= 1");
    cvec out(n);
    for (long k = 0; k < n; ++k) {
        const double power = rng.next_gamma(m, 1.0 / m);
        const double phase = 2.0 * M_PI * rng.next_double();
        out[k] = std::polar(std::sqrt(power), phase);
    }
    return out;
}

ChannelRealization sample_channels(const SystemParams& p, RngStream& g_stream,
                                   RngStream& f_stream, RngStream& h_stream) {
    validate(p);
    ChannelRealization ch;
    ch.g = sample_nakagami_vector(p.m_g, 1, g_stream)[0];
    ch.f = sample_nakagami_vector(p.m_f, p.m, f_stream);
    ch.h = sample_nakagami_vector(p.m_h, p.m, h_stream);
    return ch;
}

AmbientFrame sample_ambient(const SystemParams& p, RngStream& rng) {
    return sample_ambient_n(p, p.ns, p.ts, rng);
}

AmbientFrame sample_ambient_n(const SystemParams& p, long count, double ts_actual,
                              RngStream& rng) {
    if (count < 1) throw invalid_parameter_error("sample_ambient: symbol count must be >= 1");
    if (!(ts_actual > 0.0))
        throw invalid_parameter_error("sample_ambient: symbol duration must be > 0");
    AmbientFrame frame;
    frame.ps = p.ps;
    frame.ts = ts_actual;
    frame.symbols.resize(count);
    for (long i = 0; i < count; ++i) frame.symbols[i] = rng.next_cgaussian(1.0);
    return frame;
}

cvec sample_post_correlator_noise(double variance_scale, long m, RngStream& rng, bool bypass) {
    if (bypass) return cvec(m, cplx{0.0, 0.0});
    if (!(variance_scale > 0.0))
        throw invalid_parameter_error("sample_post_correlator_noise: variance must be > 0");
    cvec out(m);
    for (long k = 0; k < m; ++k) out[k] = rng.next_cgaussian(variance_scale);
    return out;
}

}  // namespace bswpt
