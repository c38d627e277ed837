#include "bswpt/validate.hpp"

#include <cmath>
#include <sstream>

#include "bswpt/correlator.hpp"
#include "bswpt/engine.hpp"
#include "bswpt/rng.hpp"
#include "bswpt/stochastics.hpp"
#include "bswpt/training.hpp"
#include "bswpt/wpt.hpp"

namespace bswpt {

namespace {

SystemParams small_params(long ns, long nc, int m = 8) {
    SystemParams p;
    p.ns = ns;
    p.nc = nc;
    p.ts = 5e-6;
    p.tc = p.ts * static_cast<double>(ns) / static_cast<double>(nc);
    p.m = m;
    return p;
}

// Random per-symbol-balanced pattern: a shuffled half/half window per symbol.
TrainingSequence random_balanced(long ns, long k, RngStream& rng, double tc) {
    TrainingSequence seq = gen_balanced(ns, k, tc);
    for (long i = 0; i < ns; ++i) {
        int* w = seq.chips.data() + i * k;
        for (long j = k - 1; j > 0; --j) {
            const long pick = static_cast<long>(rng.next_u64() % static_cast<std::uint64_t>(j + 1));
            std::swap(w[j], w[pick]);
        }
    }
    return seq;
}

CheckResult check_closed_form_vs_waveform(std::uint64_t seed) {
    double worst = 0.0;
    long cases = 0;
    for (long rep = 0; rep < 200; ++rep) {
        RngStream pick(seed, rep, StreamLabel::chips, 900);
        const bool ge = rep % 2 == 1;
        const long base = 1 + static_cast<long>(pick.next_u64() % 6);
        const long mult = 1 + static_cast<long>(pick.next_u64() % 8);
        const long ns = ge ? base * mult : base;
        const long nc = ge ? base : base * mult;
        SystemParams p = small_params(ns, nc);
        RngStream g_s(seed, rep, StreamLabel::channel_g), f_s(seed, rep, StreamLabel::channel_f),
            h_s(seed, rep, StreamLabel::channel_h), sym(seed, rep, StreamLabel::symbols),
            chips(seed, rep, StreamLabel::chips);
        const ChannelRealization ch = sample_channels(p, g_s, f_s, h_s);
        const AmbientFrame frame = sample_ambient(p, sym);
        const TrainingSequence seq = gen_pn(nc, chips, p.tc);
        const CorrelatorScalars cf = closed_form_scalars(p, ch, frame, seq);
        const CorrelatorScalars wf = waveform_scalars(p, ch, frame, seq, 0.0, p.ts);
        const double scale = std::max({std::abs(cf.backscatter), std::abs(cf.ambient),
                                       std::abs(wf.backscatter), std::abs(wf.ambient)});
        worst = std::max(worst, std::abs(cf.backscatter - wf.backscatter) / scale);
        worst = std::max(worst, std::abs(cf.ambient - wf.ambient) / scale);
        ++cases;
    }
    std::ostringstream os;
    os << cases << " synchronized instances, max relative deviation " << worst;
    return {"closed-form vs waveform equivalence", worst < 1e-9, os.str()};
}

CheckResult check_balanced_cancellation(std::uint64_t seed, bool inject_fault) {
    double worst = 0.0;
    for (long rep = 0; rep < 200; ++rep) {
        RngStream pick(seed, rep, StreamLabel::chips, 901);
        const long ns = 1 + static_cast<long>(pick.next_u64() % 12);
        const long k = 2 * (1 + static_cast<long>(pick.next_u64() % 10));
        SystemParams p = small_params(ns, ns * k);
        const DerivedParams d = derive(p);
        RngStream g_s(seed, rep, StreamLabel::channel_g), f_s(seed, rep, StreamLabel::channel_f),
            h_s(seed, rep, StreamLabel::channel_h), sym(seed, rep, StreamLabel::symbols),
            shuffle(seed, rep, StreamLabel::chips);
        const ChannelRealization ch = sample_channels(p, g_s, f_s, h_s);
        const AmbientFrame frame = sample_ambient(p, sym);
        TrainingSequence seq = random_balanced(ns, k, shuffle, p.tc);
        if (inject_fault && rep == 17) seq.chips[0] = -seq.chips[0];
        const cvec zero(p.m, cplx{0.0, 0.0});
        const CorrelatorOutput out =
            correlate_closed_form(p, d, ch, frame, seq, zero, zero);
        const CorrelatorOutput wout =
            correlate_waveform(p, d, ch, frame, seq, 0.0, p.ts, zero, zero);
        const double scale = std::sqrt(d.gamma3 * p.ps) * vec_norm(ch.h);
        worst = std::max(worst, vec_norm(out.x_i) / scale);
        worst = std::max(worst, vec_norm(wout.x_i) / scale);
    }
    std::ostringstream os;
    os << "max ||x_i|| relative to sqrt(gamma3*ps)*||h||: " << worst;
    return {"balanced-design ambient cancellation", worst <= 1e-12, os.str()};
}

CheckResult check_offset_scaling(std::uint64_t seed) {
    double worst = 0.0;
    double worst_ambient = 0.0;
    for (long rep = 0; rep < 100; ++rep) {
        RngStream pick(seed, rep, StreamLabel::chips, 902);
        const long ns = 1 + static_cast<long>(pick.next_u64() % 8);
        SystemParams p = small_params(ns, 2 * ns);  // two chips per symbol
        RngStream g_s(seed, rep, StreamLabel::channel_g), f_s(seed, rep, StreamLabel::channel_f),
            h_s(seed, rep, StreamLabel::channel_h), sym(seed, rep, StreamLabel::symbols);
        const ChannelRealization ch = sample_channels(p, g_s, f_s, h_s);
        const AmbientFrame frame = sample_ambient(p, sym);
        const TrainingSequence seq = gen_alternating(ns, 2, p.tc);
        const double t_off = 2.0 * p.tc * pick.next_double();
        const CorrelatorScalars sync = waveform_scalars(p, ch, frame, seq, 0.0, p.ts);
        const CorrelatorScalars off = waveform_scalars(p, ch, frame, seq, t_off, p.ts);
        const cplx expect = offset_scale(t_off, p.tc) * sync.backscatter;
        const double scale = std::max(std::abs(sync.backscatter), 1e-300);
        worst = std::max(worst, std::abs(off.backscatter - expect) / scale);
        worst_ambient = std::max(worst_ambient, std::abs(off.ambient));
    }
    std::ostringstream os;
    os << "max scaling deviation " << worst << ", max |ambient| " << worst_ambient;
    return {"offset scaling and ambient immunity", worst < 1e-9 && worst_ambient < 1e-12,
            os.str()};
}

CheckResult check_hadamard(std::uint64_t) {
    bool ok = true;
    std::ostringstream os;
    for (long order = 2; order <= 64; order *= 2) {
        std::vector<TrainingSequence> rows;
        for (long r = 0; r < order; ++r) rows.push_back(walsh_hadamard_row(order, r));
        for (long a = 0; a < order && ok; ++a)
            for (long b = a + 1; b < order && ok; ++b) {
                long dot = 0;
                for (long c = 0; c < order; ++c) dot += rows[a].chips[c] * rows[b].chips[c];
                if (dot != 0) {
                    ok = false;
                    os << "rows " << a << "," << b << " of order " << order
                       << " not orthogonal; ";
                }
            }
        for (long r = 1; r < order; ++r) {
            long sum = 0;
            for (int c : rows[r].chips) sum += c;
            if (sum != 0) {
                ok = false;
                os << "row " << r << " of order " << order << " has nonzero sum; ";
            }
        }
    }
    if (ok) os << "orders 2..64: all distinct rows orthogonal, all nonzero rows sum to zero";
    return {"Walsh-Hadamard row properties", ok, os.str()};
}

CheckResult check_asymptotic_moments(std::uint64_t seed) {
    bool ok = true;
    std::ostringstream os;
    const int m_ant = 500;
    for (double mf : {1.0, 10.0}) {
        KahanSum acc;
        const long trials = 1000;
        for (long t = 0; t < trials; ++t) {
            RngStream f_s(seed, t, StreamLabel::channel_f, mf == 1.0 ? 101 : 110);
            const cvec f = sample_nakagami_vector(mf, m_ant, f_s);
            const double n2 = norm2(f);
            acc.add(n2 * n2);
        }
        const double got = acc.value() / static_cast<double>(trials) / m_ant;
        const double want = static_cast<double>(m_ant) + 1.0 / mf;
        const double dev = std::abs(got - want) / want;
        os << "m_f=" << mf << ": E||f||^4/m = " << got << " vs " << want << " (dev " << dev
           << "); ";
        ok = ok && dev < 0.02;
    }
    return {"large-array fourth-moment limit", ok, os.str()};
}

CheckResult check_formula_reductions(std::uint64_t seed) {
    double worst = 0.0;
    RngStream rng(seed, 0, StreamLabel::chips, 903);
    for (long rep = 0; rep < 200; ++rep) {
        SystemParams p = small_params(4, 40, 500);
        p.sigma_i2 = 0.0;
        p.t_off = 0.0;
        const DerivedParams d = derive(p);
        const double g2 = rng.next_gamma(1.0, 1.0);
        MuNu mn{rng.next_gamma(1.0, 4.0), 0.0};

        // Cancelled-ambient form == chip-weighted form at nu = 0.
        const double a = incident_power_asymptotic(PowerScenario::Balanced, mn, g2, p, d);
        const double b = incident_power_asymptotic(PowerScenario::PnLe, mn, g2, p, d);
        worst = std::max(worst, std::abs(a - b) / a);

        // Interference form at sigma_i2 = 0 == chip-weighted form.
        MuNu mn2{mn.mu, rng.next_gamma(1.0, 2.0)};
        const double c = incident_power_asymptotic(PowerScenario::Interference, mn2, g2, p, d);
        const double e = incident_power_asymptotic(PowerScenario::PnLe, mn2, g2, p, d);
        worst = std::max(worst, std::abs(c - e) / c);

        // Offset form at t_off = 0 == cancelled-ambient form.
        const double f = incident_power_asymptotic(PowerScenario::Offset, mn, g2, p, d);
        worst = std::max(worst, std::abs(f - a) / a);
    }
    std::ostringstream os;
    os << "max relative deviation " << worst;
    return {"closed-form reductions", worst < 1e-12, os.str()};
}

}  // namespace

std::vector<CheckResult> run_validation(std::uint64_t seed, bool inject_fault) {
    std::vector<CheckResult> results;
    results.push_back(check_closed_form_vs_waveform(seed));
    results.push_back(check_balanced_cancellation(seed, inject_fault));
    results.push_back(check_offset_scaling(seed));
    results.push_back(check_hadamard(seed));
    results.push_back(check_asymptotic_moments(seed));
    results.push_back(check_formula_reductions(seed));
    return results;
}

}  // namespace bswpt
