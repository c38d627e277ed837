#include "bswpt/correlator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bswpt {

namespace {

// Complex Kahan accumulator.
class CplxSum {
public:
    void add(cplx z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    cplx value() const { return {re_.value(), im_.value()}; }

private:
    KahanSum re_, im_;
};

enum class Regime { SymbolsDivideChips, ChipsDivideSymbols };

Regime classify(long ns, long nc) {
    if (ns <= nc && nc % ns == 0) return Regime::SymbolsDivideChips;
    if (ns >= nc && ns % nc == 0) return Regime::ChipsDivideSymbols;
    throw regime_error("closed form needs ns | nc or nc | ns (ns=" + std::to_string(ns) +
                       ", nc=" + std::to_string(nc) + "); use the waveform integrator");
}

}  // namespace

MuNu mu_nu(const AmbientFrame& frame, const TrainingSequence& seq) {
    const long ns = static_cast<long>(frame.symbols.size());
    const long nc = static_cast<long>(seq.chips.size());
    const Regime regime = classify(ns, nc);

    CplxSum sym_sum;
    for (const cplx& s : frame.symbols) sym_sum.add(s);

    CplxSum weighted;
    if (regime == Regime::SymbolsDivideChips) {
        const long window = nc / ns;
        for (long i = 0; i < ns; ++i) {
            long w = 0;
            for (long n = 0; n < window; ++n) w += seq.chips[i * window + n];
            weighted.add(static_cast<double>(w) * frame.symbols[i]);
        }
    } else {
        const long window = ns / nc;
        for (long n = 0; n < nc; ++n) {
            CplxSum inner_sum;
            for (long i = 0; i < window; ++i) inner_sum.add(frame.symbols[n * window + i]);
            weighted.add(static_cast<double>(seq.chips[n]) * inner_sum.value());
        }
    }
    return {std::norm(sym_sum.value()), std::norm(weighted.value())};
}

CorrelatorScalars closed_form_scalars(const SystemParams&, const ChannelRealization& ch,
                                      const AmbientFrame& frame, const TrainingSequence& seq) {
    const long ns = static_cast<long>(frame.symbols.size());
    const long nc = static_cast<long>(seq.chips.size());
    const Regime regime = classify(ns, nc);

    CplxSum sym_sum;
    for (const cplx& s : frame.symbols) sym_sum.add(s);

    CorrelatorScalars out;
    out.backscatter = ch.g * sym_sum.value() / static_cast<double>(ns);

    CplxSum weighted;
    if (regime == Regime::SymbolsDivideChips) {
        const long window = nc / ns;
        for (long i = 0; i < ns; ++i) {
            long w = 0;
            for (long n = 0; n < window; ++n) w += seq.chips[i * window + n];
            weighted.add(static_cast<double>(w) * frame.symbols[i]);
        }
        out.ambient = weighted.value() / static_cast<double>(nc);
    } else {
        const long window = ns / nc;
        for (long n = 0; n < nc; ++n) {
            CplxSum inner_sum;
            for (long i = 0; i < window; ++i) inner_sum.add(frame.symbols[n * window + i]);
            weighted.add(static_cast<double>(seq.chips[n]) * inner_sum.value());
        }
        out.ambient = weighted.value() / static_cast<double>(ns);
    }
    return out;
}

namespace {

std::vector<double> partition_points(long nc, double tc, double t_off, double ts_actual) {
    const double tb = static_cast<double>(nc) * tc;
    std::vector<double> pts;
    pts.reserve(2 * nc + static_cast<long>(tb / ts_actual) + 4);
    pts.push_back(0.0);
    pts.push_back(tb);
    for (long n = 1; n < nc; ++n) pts.push_back(static_cast<double>(n) * tc);
    for (long i = 1; static_cast<double>(i) * ts_actual < tb; ++i)
        pts.push_back(static_cast<double>(i) * ts_actual);
    // Replica edges lie at t == t_off (mod tc).
    double first = std::fmod(t_off, tc);
    if (first < 0.0) first += tc;
    for (long j = 0; first + static_cast<double>(j) * tc < tb; ++j) {
        const double t = first + static_cast<double>(j) * tc;
        if (t > 0.0) pts.push_back(t);
    }
    std::sort(pts.begin(), pts.end());
    // Merge coincident edges; the dropped slivers are below 1e-12 of a chip.
    std::vector<double> uniq;
    uniq.reserve(pts.size());
    for (double t : pts)
        if (uniq.empty() || t - uniq.back() > 1e-12 * tc) uniq.push_back(t);
    if (uniq.back() < tb) uniq.push_back(tb);
    return uniq;
}

}  // namespace

std::vector<BreakpointRow> breakpoint_partition(const SystemParams& p, const AmbientFrame& frame,
                                                const TrainingSequence& seq, double t_off,
                                                double ts_actual) {
    const long nc = static_cast<long>(seq.chips.size());
    const double tc = p.tc;
    const double tb = static_cast<double>(nc) * tc;
    if (!(ts_actual > 0.0))
        throw invalid_parameter_error("waveform correlator: ts_actual must be > 0");
    if (t_off < 0.0) throw invalid_parameter_error("waveform correlator: t_off must be >= 0");
    const long needed = static_cast<long>(std::ceil(tb / ts_actual - 1e-9));
    if (static_cast<long>(frame.symbols.size()) < needed)
        throw invalid_parameter_error(
            "waveform correlator: frame has " + std::to_string(frame.symbols.size()) +
            " symbols but " + std::to_string(needed) + " are needed to cover the phase");

    const std::vector<double> pts = partition_points(nc, tc, t_off, ts_actual);
    std::vector<BreakpointRow> rows;
    rows.reserve(pts.size());
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const double mid = 0.5 * (pts[k] + pts[k + 1]);
        BreakpointRow row;
        row.t0 = pts[k];
        row.t1 = pts[k + 1];
        long n = static_cast<long>(std::floor(mid / tc));
        n = std::clamp(n, 0L, nc - 1);
        row.recv_chip = seq.chips[n];
        long j = static_cast<long>(std::floor((mid - t_off) / tc));
        j = ((j % nc) + nc) % nc;
        row.replica_chip = seq.chips[j];
        const long i = std::min(static_cast<long>(std::floor(mid / ts_actual)),
                                static_cast<long>(frame.symbols.size()) - 1);
        row.symbol = frame.symbols[i];
        rows.push_back(row);
    }
    return rows;
}

CorrelatorScalars waveform_scalars(const SystemParams& p, const ChannelRealization& ch,
                                   const AmbientFrame& frame, const TrainingSequence& seq,
                                   double t_off, double ts_actual) {
    const long nc = static_cast<long>(seq.chips.size());
    const double tb = static_cast<double>(nc) * p.tc;
    const auto rows = breakpoint_partition(p, frame, seq, t_off, ts_actual);
    CplxSum backscatter, ambient;
    for (const BreakpointRow& row : rows) {
        const double len = row.t1 - row.t0;
        const double rep = static_cast<double>(row.replica_chip);
        backscatter.add(static_cast<double>(row.recv_chip) * rep * row.symbol * len);
        ambient.add(rep * row.symbol * len);
    }
    CorrelatorScalars out;
    out.backscatter = ch.g * backscatter.value() / tb;
    out.ambient = ambient.value() / tb;
    return out;
}

namespace {

CorrelatorOutput assemble(const SystemParams& p, const DerivedParams& d,
                          const ChannelRealization& ch, const AmbientFrame& frame,
                          const CorrelatorScalars& scalars, cvec u_tilde, cvec n_tilde) {
    const std::size_t m = ch.f.size();
    if (u_tilde.size() != m || n_tilde.size() != m)
        throw invalid_parameter_error("correlator: noise vectors must have length m");
    const cplx a = std::sqrt(d.gamma1 * d.gamma2 * frame.ps) * scalars.backscatter;
    const cplx b = std::sqrt(d.gamma3 * frame.ps) * scalars.ambient;
    CorrelatorOutput out;
    out.x_s.resize(m);
    out.x_i.resize(m);
    out.x_r.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        out.x_s[k] = a * ch.f[k];
        out.x_i[k] = b * ch.h[k];
        out.x_r[k] = out.x_s[k] + out.x_i[k] + u_tilde[k] + n_tilde[k];
    }
    out.u_tilde = std::move(u_tilde);
    out.n_tilde = std::move(n_tilde);
    (void)p;
    return out;
}

}  // namespace

CorrelatorOutput correlate_closed_form(const SystemParams& p, const DerivedParams& d,
                                       const ChannelRealization& ch, const AmbientFrame& frame,
                                       const TrainingSequence& seq, cvec u_tilde, cvec n_tilde) {
    const CorrelatorScalars scalars = closed_form_scalars(p, ch, frame, seq);
    return assemble(p, d, ch, frame, scalars, std::move(u_tilde), std::move(n_tilde));
}

CorrelatorOutput correlate_waveform(const SystemParams& p, const DerivedParams& d,
                                    const ChannelRealization& ch, const AmbientFrame& frame,
                                    const TrainingSequence& seq, double t_off, double ts_actual,
                                    cvec u_tilde, cvec n_tilde) {
    const CorrelatorScalars scalars = waveform_scalars(p, ch, frame, seq, t_off, ts_actual);
    return assemble(p, d, ch, frame, scalars, std::move(u_tilde), std::move(n_tilde));
}

double offset_scale(double t_off, double tc) {
    if (!(tc > 0.0)) throw invalid_parameter_error("offset_scale: tc must be > 0");
    double u = std::fmod(t_off / tc, 2.0);
    if (u < 0.0) u += 2.0;
    return (u <= 1.0) ? 1.0 - 2.0 * u : 2.0 * u - 3.0;
}

}  // namespace bswpt
