#include <doctest.h>

#include <cmath>

#include "bswpt/correlator.hpp"

using namespace bswpt;

namespace {

SystemParams make_params(long ns, long nc, int m = 8) {
    SystemParams p;
    p.ns = ns;
    p.nc = nc;
    p.ts = 5e-6;
    p.tc = p.ts * static_cast<double>(ns) / static_cast<double>(nc);
    p.m = m;
    p.alpha = 2.5;
    return p;
}

struct Draw {
    SystemParams p;
    DerivedParams d;
    ChannelRealization ch;
    AmbientFrame frame;
};

Draw make_draw(long ns, long nc, std::uint64_t seed, long trial, int m = 8) {
    Draw dr;
    dr.p = make_params(ns, nc, m);
    dr.d = derive(dr.p);
    RngStream gs(seed, trial, StreamLabel::channel_g), fs(seed, trial, StreamLabel::channel_f),
        hs(seed, trial, StreamLabel::channel_h), sym(seed, trial, StreamLabel::symbols);
    dr.ch = sample_channels(dr.p, gs, fs, hs);
    dr.frame = sample_ambient(dr.p, sym);
    return dr;
}

double rel_dev(cplx a, cplx b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace

TEST_SUITE("correlator") {

TEST_CASE("mu from explicit symbol values") {
    AmbientFrame frame;
    frame.symbols = {cplx{1.0, 0.0}};
    TrainingSequence seq;
    seq.chips = {1, -1};
    CHECK(mu_nu(frame, seq).mu == doctest::Approx(1.0).epsilon(1e-15));

    frame.symbols = {cplx{1.0, 0.0}, cplx{0.0, 1.0}};
    seq.chips = {1, -1, 1, -1};
    CHECK(mu_nu(frame, seq).mu == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("nu vanishes identically for balanced sequences") {
    RngStream sym(23, 0, StreamLabel::symbols);
    for (long ns : {1L, 3L, 8L}) {
        for (long k : {2L, 6L, 10L}) {
            SystemParams p = make_params(ns, ns * k);
            AmbientFrame frame;
            frame.symbols.resize(ns);
            for (auto& s : frame.symbols) s = sym.next_cgaussian(1.0);
            const TrainingSequence seq = gen_balanced(ns, k, p.tc);
            CHECK(mu_nu(frame, seq).nu == 0.0);
        }
    }
}

TEST_CASE("mu_nu rejects incompatible window counts") {
    AmbientFrame frame;
    frame.symbols.resize(3);
    TrainingSequence seq;
    seq.chips.assign(5, 1);
    CHECK_THROWS_AS(mu_nu(frame, seq), regime_error);
}

TEST_CASE("closed form matches the resolved component expressions") {
    // Single unit symbol: x_s must equal sqrt(g1*g2*ps)*g*f exactly and the
    // balanced sequence must null x_i.
    Draw dr = make_draw(1, 2, 31, 0);
    dr.frame.symbols = {cplx{1.0, 0.0}};
    const TrainingSequence seq = gen_balanced(1, 2, dr.p.tc);
    const cvec zero(dr.p.m, cplx{0.0, 0.0});
    const CorrelatorOutput out =
        correlate_closed_form(dr.p, dr.d, dr.ch, dr.frame, seq, zero, zero);
    const double amp = std::sqrt(dr.d.gamma1 * dr.d.gamma2 * dr.p.ps);
    for (int k = 0; k < dr.p.m; ++k) {
        CHECK(rel_dev(out.x_s[k], amp * dr.ch.g * dr.ch.f[k]) < 1e-12);
        CHECK(out.x_i[k] == cplx{0.0, 0.0});
        CHECK(out.x_r[k] == out.x_s[k]);
    }
}

TEST_CASE("desired component does not depend on the chip pattern") {
    Draw dr = make_draw(4, 40, 37, 1);
    RngStream chips(37, 1, StreamLabel::chips);
    const TrainingSequence s1 = gen_pn(40, chips, dr.p.tc);
    const TrainingSequence s2 = gen_pn(40, chips, dr.p.tc);
    REQUIRE(s1.chips != s2.chips);
    const CorrelatorScalars a = closed_form_scalars(dr.p, dr.ch, dr.frame, s1);
    const CorrelatorScalars b = closed_form_scalars(dr.p, dr.ch, dr.frame, s2);
    CHECK(a.backscatter == b.backscatter);
    CHECK(a.ambient != b.ambient);
}

TEST_CASE("closed form and waveform integrator agree in both regimes") {
    double worst = 0.0;
    for (long rep = 0; rep < 250; ++rep) {
        RngStream pick(41, rep, StreamLabel::chips, 77);
        const long base = 1 + static_cast<long>(pick.next_u64() % 6);
        const long mult = 1 + static_cast<long>(pick.next_u64() % 8);
        const bool ge = rep % 2 == 1;
        const long ns = ge ? base * mult : base;
        const long nc = ge ? base : base * mult;
        Draw dr = make_draw(ns, nc, 41, rep);
        RngStream chips(41, rep, StreamLabel::chips);
        const TrainingSequence seq = gen_pn(nc, chips, dr.p.tc);
        const CorrelatorScalars cf = closed_form_scalars(dr.p, dr.ch, dr.frame, seq);
        const CorrelatorScalars wf = waveform_scalars(dr.p, dr.ch, dr.frame, seq, 0.0, dr.p.ts);
        // Deviation relative to the instance's overall scalar magnitude, so
        // an exactly-cancelled component compares against the frame scale.
        const double scale = std::max({std::abs(cf.backscatter), std::abs(cf.ambient),
                                       std::abs(wf.backscatter), std::abs(wf.ambient)});
        worst = std::max(worst, std::abs(cf.backscatter - wf.backscatter) / scale);
        worst = std::max(worst, std::abs(cf.ambient - wf.ambient) / scale);
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("waveform nulls the ambient component for any delay") {
    Draw dr = make_draw(5, 10, 43, 2);
    const TrainingSequence seq = gen_alternating(5, 2, dr.p.tc);
    RngStream pick(43, 2, StreamLabel::chips, 78);
    for (int rep = 0; rep < 50; ++rep) {
        const double t_off = 2.0 * dr.p.tc * pick.next_double();
        const CorrelatorScalars wf =
            waveform_scalars(dr.p, dr.ch, dr.frame, seq, t_off, dr.p.ts);
        CHECK(std::abs(wf.ambient) < 1e-12);
    }
}

TEST_CASE("half-chip delay nulls the desired component") {
    Draw dr = make_draw(4, 8, 47, 3);
    const TrainingSequence seq = gen_alternating(4, 2, dr.p.tc);
    const CorrelatorScalars wf =
        waveform_scalars(dr.p, dr.ch, dr.frame, seq, dr.p.tc / 2.0, dr.p.ts);
    const CorrelatorScalars sync = waveform_scalars(dr.p, dr.ch, dr.frame, seq, 0.0, dr.p.ts);
    CHECK(std::abs(wf.backscatter) < 1e-12 * std::abs(sync.backscatter));
}

TEST_CASE("delayed desired component scales by the triangle factor") {
    RngStream pick(53, 0, StreamLabel::chips, 79);
    double worst = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        const long ns = 1 + static_cast<long>(pick.next_u64() % 6);
        Draw dr = make_draw(ns, 2 * ns, 53, rep);
        const TrainingSequence seq = gen_alternating(ns, 2, dr.p.tc);
        const double t_off = 2.0 * dr.p.tc * pick.next_double();
        const CorrelatorScalars sync = waveform_scalars(dr.p, dr.ch, dr.frame, seq, 0.0, dr.p.ts);
        const CorrelatorScalars off =
            waveform_scalars(dr.p, dr.ch, dr.frame, seq, t_off, dr.p.ts);
        const cplx expect = offset_scale(t_off, dr.p.tc) * sync.backscatter;
        worst = std::max(worst,
                         std::abs(off.backscatter - expect) / std::abs(sync.backscatter));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("offset scale anchors and periodicity") {
    const double tc = 5e-7;
    CHECK(offset_scale(0.0, tc) == 1.0);
    CHECK(offset_scale(tc / 2.0, tc) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(offset_scale(tc / 4.0, tc) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(offset_scale(tc, tc) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(offset_scale(1.5 * tc, tc) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(offset_scale(2.0 * tc, tc) == doctest::Approx(1.0).epsilon(1e-12));
    // Periodic extension with period 2*tc.
    for (double t : {0.1 * tc, 0.7 * tc, 1.3 * tc}) {
        CHECK(offset_scale(t + 2.0 * tc, tc) == doctest::Approx(offset_scale(t, tc)).epsilon(1e-9));
        CHECK(offset_scale(t + 4.0 * tc, tc) == doctest::Approx(offset_scale(t, tc)).epsilon(1e-9));
    }
}

TEST_CASE("magnitude ratio identity for a single-symbol frame") {
    // With one symbol, ||x_i||/||x_s|| reduces to
    // sqrt(g3)/(sqrt(g1*g2)|g|) * |sum of chips|/nc * ||h||/||f||.
    for (long rep = 0; rep < 40; ++rep) {
        Draw dr = make_draw(1, 10, 59, rep);
        RngStream chips(59, rep, StreamLabel::chips);
        const TrainingSequence seq = gen_pn(10, chips, dr.p.tc);
        const cvec zero(dr.p.m, cplx{0.0, 0.0});
        const CorrelatorOutput out =
            correlate_closed_form(dr.p, dr.d, dr.ch, dr.frame, seq, zero, zero);
        long chip_sum = 0;
        for (int c : seq.chips) chip_sum += c;
        const double expect = std::sqrt(dr.d.gamma3) /
                              (std::sqrt(dr.d.gamma1 * dr.d.gamma2) * std::abs(dr.ch.g)) *
                              (std::abs(static_cast<double>(chip_sum)) / 10.0) *
                              (vec_norm(dr.ch.h) / vec_norm(dr.ch.f));
        const double got = vec_norm(out.x_i) / vec_norm(out.x_s);
        CHECK(got == doctest::Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("breakpoint partition tiles the correlation window") {
    SystemParams p = make_params(3, 12);
    RngStream sym(61, 0, StreamLabel::symbols);
    AmbientFrame frame;
    frame.symbols.resize(3);
    for (auto& s : frame.symbols) s = sym.next_cgaussian(1.0);
    const TrainingSequence seq = gen_balanced(3, 4, p.tc);
    const auto rows = breakpoint_partition(p, frame, seq, 0.37 * p.tc, p.ts);
    REQUIRE(!rows.empty());
    CHECK(rows.front().t0 == 0.0);
    CHECK(rows.back().t1 == doctest::Approx(12.0 * p.tc).epsilon(1e-12));
    for (std::size_t k = 1; k < rows.size(); ++k) CHECK(rows[k].t0 == rows[k - 1].t1);
    for (const auto& r : rows) CHECK(r.t1 > r.t0);
}

TEST_CASE("waveform integrator needs enough symbols to cover the phase") {
    SystemParams p = make_params(4, 8);
    AmbientFrame frame;
    frame.symbols.resize(2);  // half the frame
    const TrainingSequence seq = gen_balanced(4, 2, p.tc);
    ChannelRealization ch;
    ch.g = 1.0;
    ch.f.assign(p.m, cplx{1.0, 0.0});
    ch.h.assign(p.m, cplx{1.0, 0.0});
    CHECK_THROWS_WITH_AS(waveform_scalars(p, ch, frame, seq, 0.0, p.ts),
                         doctest::Contains("symbols"), invalid_parameter_error);
}

}  // TEST_SUITE
