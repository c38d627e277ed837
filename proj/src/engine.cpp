#include "bswpt/engine.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>
#include <vector>

#include "bswpt/correlator.hpp"
#include "bswpt/rng.hpp"
#include "bswpt/stochastics.hpp"
#include "bswpt/training.hpp"
#include "bswpt/wpt.hpp"

namespace bswpt {

std::string to_string(SimScenario s) {
    switch (s) {
        case SimScenario::Pn: return "pn";
        case SimScenario::Balanced: return "balanced";
        case SimScenario::Offset: return "offset";
        case SimScenario::Interference: return "interference";
        case SimScenario::Mismatch: return "mismatch";
    }
    return "?";
}

std::string to_string(SimPath p) { return p == SimPath::Exact ? "exact" : "asymptotic"; }

namespace {

constexpr int kMaxResamples = 10;

struct RunContext {
    SystemParams p;
    HarvesterModel h;
    DerivedParams d;
    ScenarioSpec spec;
    SimPath path;
    std::uint64_t seed = 0;
    double ts_actual = 0.0;      // effective on-air symbol duration
    long frame_symbols = 0;      // symbols needed to cover the phase
    TrainingSequence fixed_seq;  // balanced/alternating scenarios reuse one sequence
    bool per_trial_sequence = false;
    bool use_closed_form = false;
};

RunContext make_context(const SystemParams& p, const HarvesterModel& h, const ScenarioSpec& spec,
                        SimPath path, std::uint64_t seed) {
    RunContext ctx{p, h, derive(p), spec, path, seed, 0.0, 0, {}, false, false};
    validate(h);

    const long ns = p.ns, nc = p.nc;
    switch (spec.kind) {
        case SimScenario::Pn:
            ctx.per_trial_sequence = true;
            break;
        case SimScenario::Balanced:
        case SimScenario::Interference:
            if (nc % ns != 0 || (nc / ns) % 2 != 0)
                throw invalid_parameter_error(to_string(spec.kind) +
                                              " scenario requires an even chips-per-symbol ratio");
            ctx.fixed_seq = gen_balanced(ns, nc / ns, p.tc);
            break;
        case SimScenario::Offset:
        case SimScenario::Mismatch:
            if (nc % ns != 0 || (nc / ns) % 2 != 0)
                throw invalid_parameter_error(to_string(spec.kind) +
                                              " scenario requires an even chips-per-symbol ratio");
            ctx.fixed_seq = gen_alternating(ns, nc / ns, p.tc);
            break;
    }

    ctx.ts_actual = (spec.kind == SimScenario::Mismatch && spec.ts_actual > 0.0) ? spec.ts_actual
                                                                                 : p.ts;
    ctx.frame_symbols = static_cast<long>(std::ceil(ctx.d.tb / ctx.ts_actual - 1e-9));

    // Synchronized runs in a divisibility regime go through the closed
    // form; the two routes are interchangeable there (checked to 1e-9 by
    // the equivalence suite) and the closed form keeps balanced
    // cancellation exact.
    const bool synchronized = p.t_off == 0.0 && ctx.ts_actual == p.ts;
    const bool divisible = (ns <= nc && nc % ns == 0) || (ns >= nc && ns % nc == 0);
    ctx.use_closed_form = synchronized && divisible;

    if (path == SimPath::Asymptotic && spec.kind == SimScenario::Mismatch)
        throw invalid_parameter_error(
            "mismatch scenario has no closed form; use the exact path");
    return ctx;
}

PowerScenario asymptotic_scenario(const RunContext& ctx) {
    switch (ctx.spec.kind) {
        case SimScenario::Pn:
            return ctx.p.ns <= ctx.p.nc ? PowerScenario::PnLe : PowerScenario::PnGe;
        case SimScenario::Balanced: return PowerScenario::Balanced;
        case SimScenario::Offset: return PowerScenario::Offset;
        case SimScenario::Interference: return PowerScenario::Interference;
        case SimScenario::Mismatch: break;
    }
    throw invalid_parameter_error("no closed-form scenario for mismatch");
}

TrialResult simulate_exact(const RunContext& ctx, long trial, std::uint64_t attempt,
                           bool& degenerate) {
    const SystemParams& p = ctx.p;
    RngStream g_stream(ctx.seed, trial, StreamLabel::channel_g, attempt);
    RngStream f_stream(ctx.seed, trial, StreamLabel::channel_f, attempt);
    RngStream h_stream(ctx.seed, trial, StreamLabel::channel_h, attempt);
    RngStream sym_stream(ctx.seed, trial, StreamLabel::symbols, attempt);
    RngStream noise_stream(ctx.seed, trial, StreamLabel::noise, attempt);
    RngStream intf_stream(ctx.seed, trial, StreamLabel::interference, attempt);

    const ChannelRealization ch = sample_channels(p, g_stream, f_stream, h_stream);
    const AmbientFrame frame = sample_ambient_n(p, ctx.frame_symbols, ctx.ts_actual, sym_stream);

    TrainingSequence per_trial;
    if (ctx.per_trial_sequence) {
        RngStream chip_stream(ctx.seed, trial, StreamLabel::chips, attempt);
        per_trial = gen_pn(p.nc, chip_stream, p.tc);
    }
    const TrainingSequence& seq = ctx.per_trial_sequence ? per_trial : ctx.fixed_seq;

    const double post_var = p.sigma_n2 / (static_cast<double>(p.nc) * p.tc);
    cvec n_tilde = sample_post_correlator_noise(post_var, p.m, noise_stream);
    cvec u_tilde = (p.sigma_i2 > 0.0)
                       ? sample_post_correlator_noise(
                             p.sigma_i2 / (static_cast<double>(p.nc) * p.tc), p.m, intf_stream)
                       : cvec(p.m, cplx{0.0, 0.0});

    const CorrelatorOutput out =
        ctx.use_closed_form
            ? correlate_closed_form(p, ctx.d, ch, frame, seq, std::move(u_tilde),
                                    std::move(n_tilde))
            : correlate_waveform(p, ctx.d, ch, frame, seq, p.t_off, ctx.ts_actual,
                                 std::move(u_tilde), std::move(n_tilde));
    if (norm2(out.x_r) == 0.0) {
        degenerate = true;
        return {};
    }

    TrialResult res;
    res.trial_index = trial;
    res.q_rf = incident_power_exact(out, ch, p, ctx.d);
    res.q = harvest(res.q_rf, ctx.h);
    const double s_norm = vec_norm(out.x_s);
    const double i_norm = vec_norm(out.x_i);
    if (s_norm > 0.0 || i_norm > 0.0) {
        res.has_ratio = s_norm > 0.0;
        res.magnitude_ratio = res.has_ratio ? i_norm / s_norm : 0.0;
    }
    return res;
}

TrialResult simulate_asymptotic(const RunContext& ctx, long trial) {
    const SystemParams& p = ctx.p;
    RngStream g_stream(ctx.seed, trial, StreamLabel::channel_g);
    RngStream sym_stream(ctx.seed, trial, StreamLabel::symbols);

    const cplx g = sample_nakagami_vector(p.m_g, 1, g_stream)[0];
    const AmbientFrame frame = sample_ambient(p, sym_stream);

    TrainingSequence per_trial;
    if (ctx.per_trial_sequence) {
        RngStream chip_stream(ctx.seed, trial, StreamLabel::chips);
        per_trial = gen_pn(p.nc, chip_stream, p.tc);
    }
    const TrainingSequence& seq = ctx.per_trial_sequence ? per_trial : ctx.fixed_seq;

    const MuNu mn = mu_nu(frame, seq);
    TrialResult res;
    res.trial_index = trial;
    res.q_rf = incident_power_asymptotic(asymptotic_scenario(ctx), mn, std::norm(g), p, ctx.d);
    res.q = harvest(res.q_rf, ctx.h);

    // Large-array ratio: ||h||/||f|| -> 1, so only the scalar weights remain.
    const double s_part = std::sqrt(ctx.d.gamma1 * ctx.d.gamma2 * std::norm(g) * mn.mu) /
                          static_cast<double>(p.ns);
    const double divisor = (p.ns <= p.nc) ? static_cast<double>(p.nc) : static_cast<double>(p.ns);
    const double i_part = std::sqrt(ctx.d.gamma3 * mn.nu) / divisor;
    if (s_part > 0.0) {
        res.has_ratio = true;
        res.magnitude_ratio = i_part / s_part;
    }
    return res;
}

struct TrialOutcome {
    TrialResult result;
    int resamples = 0;
};

TrialOutcome run_one(const RunContext& ctx, long trial) {
    TrialOutcome out;
    if (ctx.path == SimPath::Asymptotic) {
        out.result = simulate_asymptotic(ctx, trial);
        return out;
    }
    for (std::uint64_t attempt = 0;; ++attempt) {
        bool degenerate = false;
        TrialResult r = simulate_exact(ctx, trial, attempt, degenerate);
        if (!degenerate) {
            out.result = r;
            return out;
        }
        ++out.resamples;
        if (out.resamples > kMaxResamples)
            throw std::runtime_error("trial " + std::to_string(trial) +
                                     ": reference signal degenerate after " +
                                     std::to_string(kMaxResamples) + " resamples");
    }
}

}  // namespace

RunReport run_trials(const SystemParams& p, const HarvesterModel& h, const ScenarioSpec& spec,
                     SimPath path, long trials, std::uint64_t master_seed, int workers) {
    if (trials < 1) throw invalid_parameter_error("run_trials: trials must be >= 1");
    const RunContext ctx = make_context(p, h, spec, path, master_seed);

    std::vector<TrialOutcome> outcomes(trials);
    int n_workers = workers;
    if (n_workers <= 0)
        n_workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    n_workers = static_cast<int>(std::min<long>(n_workers, trials));

    if (n_workers <= 1) {
        for (long t = 0; t < trials; ++t) outcomes[t] = run_one(ctx, t);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(n_workers);
        const long chunk = (trials + n_workers - 1) / n_workers;
        for (int w = 0; w < n_workers; ++w) {
            pool.emplace_back([&, w]() {
                const long lo = static_cast<long>(w) * chunk;
                const long hi = std::min(trials, lo + chunk);
                try {
                    for (long t = lo; t < hi; ++t) outcomes[t] = run_one(ctx, t);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    RunReport report;
    report.trials = trials;
    report.master_seed = master_seed;
    report.path = path;
    report.scenario = to_string(spec.kind);
    report.params = p;
    report.harvester = h;

    KahanSum q_sum, qrf_sum, ratio_sum;
    long ratio_count = 0;
    for (const TrialOutcome& o : outcomes) {
        q_sum.add(o.result.q);
        qrf_sum.add(o.result.q_rf);
        report.resampled += o.resamples;
        if (o.result.has_ratio) {
            ratio_sum.add(o.result.magnitude_ratio);
            ++ratio_count;
        }
    }
    report.mean_q = q_sum.value() / static_cast<double>(trials);
    report.mean_q_rf = qrf_sum.value() / static_cast<double>(trials);
    report.ratio_missing = trials - ratio_count;
    report.mean_magnitude_ratio =
        ratio_count > 0 ? ratio_sum.value() / static_cast<double>(ratio_count) : 0.0;

    if (trials > 1) {
        KahanSum ss;
        for (const TrialOutcome& o : outcomes) {
            const double dlt = o.result.q - report.mean_q;
            ss.add(dlt * dlt);
        }
        const double var = ss.value() / static_cast<double>(trials - 1);
        report.stderr_q = std::sqrt(var / static_cast<double>(trials));
    }
    return report;
}

double magnitude_ratio_stat(const SystemParams& p, long trials, std::uint64_t master_seed,
                            int workers) {
    ScenarioSpec spec;
    spec.kind = SimScenario::Pn;
    HarvesterModel h;  // the ratio statistic does not involve the harvester
    const RunReport report = run_trials(p, h, spec, SimPath::Exact, trials, master_seed, workers);
    return report.mean_magnitude_ratio;
}

}  // namespace bswpt
