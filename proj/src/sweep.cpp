#include "bswpt/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace bswpt {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.8e", v);
    return buf;
}

namespace {

void check_values(const SweepSpec& spec) {
    if (spec.values.empty()) throw config_error("sweep: values list is empty");
    for (std::size_t i = 1; i < spec.values.size(); ++i)
        if (!(spec.values[i] > spec.values[i - 1]))
            throw config_error("sweep: values must be strictly increasing");
}

void write_preamble(const SweepSpec& spec, std::ostream& out) {
    const SystemParams& p = spec.base;
    out << "# bswpt " << kToolVersion << "\n";
    out << "# sweep = " << spec.variable << "\n";
    out << "# scenario = " << to_string(spec.scenario) << "\n";
    out << "# path = " << to_string(spec.path) << "\n";
    out << "# trials = " << spec.trials << "\n";
    out << "# seed = " << spec.seed << "\n";
    auto num = [&](const char* key, double v) {
        out << "# " << key << " = " << format_number(v) << "\n";
    };
    num("d1", p.d1);
    num("d2", p.d2);
    num("d3", p.d3);
    num("d0", p.d0);
    num("k0", p.k0);
    num("alpha", p.alpha);
    num("ps", p.ps);
    num("pt", p.pt);
    num("sigma_n2", p.sigma_n2);
    num("sigma_i2", p.sigma_i2);
    num("ts", p.ts);
    num("tc", p.tc);
    out << "# ns = " << p.ns << "\n";
    out << "# nc = " << p.nc << "\n";
    out << "# m = " << p.m << "\n";
    num("m_g", p.m_g);
    num("m_h", p.m_h);
    num("m_f", p.m_f);
    num("t_off", p.t_off);
    num("a0", spec.harvester.a0);
    num("b0", spec.harvester.b0);
    num("c0", spec.harvester.c0);
}

long integer_ratio(double num, double den, const char* what) {
    const double r = num / den;
    const long n = static_cast<long>(std::llround(r));
    if (n < 1 || std::abs(r - static_cast<double>(n)) > 1e-9 * std::max(1.0, r))
        throw config_error(std::string("sweep: ") + what +
                           " does not divide into an integer count");
    return n;
}

void sweep_tb(const SweepSpec& spec, std::ostream& out) {
    out << "tb,ns,nc,mean_q_w,stderr_q_w,mean_q_rf_w,mean_ratio\n";
    for (double tb : spec.values) {
        SystemParams p = spec.base;
        p.ns = integer_ratio(tb, p.ts, "tb/ts");
        p.nc = integer_ratio(tb, p.tc, "tb/tc");
        ScenarioSpec sc{spec.scenario, 0.0};
        const RunReport r =
            run_trials(p, spec.harvester, sc, spec.path, spec.trials, spec.seed, spec.workers);
        out << format_number(tb) << ',' << p.ns << ',' << p.nc << ','
            << format_number(r.mean_q) << ',' << format_number(r.stderr_q) << ','
            << format_number(r.mean_q_rf) << ',' << format_number(r.mean_magnitude_ratio)
            << "\n";
    }
}

void sweep_ps(const SweepSpec& spec, std::ostream& out) {
    out << "ps,mean_q_w,stderr_q_w,mean_q_rf_w\n";
    for (double ps : spec.values) {
        SystemParams p = spec.base;
        p.ps = ps;
        ScenarioSpec sc{spec.scenario, 0.0};
        const RunReport r =
            run_trials(p, spec.harvester, sc, spec.path, spec.trials, spec.seed, spec.workers);
        out << format_number(ps) << ',' << format_number(r.mean_q) << ','
            << format_number(r.stderr_q) << ',' << format_number(r.mean_q_rf) << "\n";
    }
}

void sweep_m(const SweepSpec& spec, std::ostream& out) {
    out << "m,mean_q_exact_w,stderr_exact_w,mean_q_asym_w,stderr_asym_w\n";
    for (double mv : spec.values) {
        SystemParams p = spec.base;
        p.m = static_cast<int>(integer_ratio(mv, 1.0, "m"));
        ScenarioSpec sc{spec.scenario, 0.0};
        const RunReport rex = run_trials(p, spec.harvester, sc, SimPath::Exact, spec.trials,
                                         spec.seed, spec.workers);
        const RunReport ras = run_trials(p, spec.harvester, sc, SimPath::Asymptotic, spec.trials,
                                         spec.seed, spec.workers);
        out << p.m << ',' << format_number(rex.mean_q) << ',' << format_number(rex.stderr_q)
            << ',' << format_number(ras.mean_q) << ',' << format_number(ras.stderr_q) << "\n";
    }
}

void sweep_offset(const SweepSpec& spec, std::ostream& out) {
    out << "t_off,t_off_over_tc,mean_q_w,stderr_q_w\n";
    for (double t_off : spec.values) {
        SystemParams p = spec.base;
        p.t_off = t_off;
        ScenarioSpec sc{SimScenario::Offset, 0.0};
        const RunReport r = run_trials(p, spec.harvester, sc, spec.path, spec.trials, spec.seed,
                                       spec.workers);
        out << format_number(t_off) << ',' << format_number(t_off / p.tc) << ','
            << format_number(r.mean_q) << ',' << format_number(r.stderr_q) << "\n";
    }
}

void sweep_mismatch(const SweepSpec& spec, std::ostream& out) {
    // Values are actual symbol counts ns'; the base config defines the
    // design point (tb, designed ns/ts). One row per (ns', chip rate).
    out << "ns_prime,ts_actual,chips_per_symbol,mean_q_w,stderr_q_w\n";
    const double tb = static_cast<double>(spec.base.ns) * spec.base.ts;
    for (double v : spec.values) {
        const long ns_prime = integer_ratio(v, 1.0, "ns_prime");
        const double ts_actual = tb / static_cast<double>(ns_prime);
        for (long k : spec.mismatch_chip_rates) {
            SystemParams p = spec.base;
            p.nc = p.ns * k;
            p.tc = tb / static_cast<double>(p.nc);
            ScenarioSpec sc{SimScenario::Mismatch, ts_actual};
            const RunReport r = run_trials(p, spec.harvester, sc, SimPath::Exact, spec.trials,
                                           spec.seed, spec.workers);
            out << ns_prime << ',' << format_number(ts_actual) << ',' << k << ','
                << format_number(r.mean_q) << ',' << format_number(r.stderr_q) << "\n";
        }
    }
}

void sweep_interference(const SweepSpec& spec, std::ostream& out) {
    out << "ratio_db,sigma_i2_w,mean_q_asym_w,stderr_asym_w,mean_q_exact_w,stderr_exact_w\n";
    for (double db : spec.values) {
        SystemParams p = spec.base;
        p.sigma_i2 = sigma_i2_from_db(db, p);
        ScenarioSpec sc{SimScenario::Interference, 0.0};
        const RunReport ras = run_trials(p, spec.harvester, sc, SimPath::Asymptotic, spec.trials,
                                         spec.seed, spec.workers);
        const RunReport rex = run_trials(p, spec.harvester, sc, SimPath::Exact, spec.trials,
                                         spec.seed, spec.workers);
        out << format_number(db) << ',' << format_number(p.sigma_i2) << ','
            << format_number(ras.mean_q) << ',' << format_number(ras.stderr_q) << ','
            << format_number(rex.mean_q) << ',' << format_number(rex.stderr_q) << "\n";
    }
}

}  // namespace

void run_sweep(const SweepSpec& spec, std::ostream& out) {
    check_values(spec);
    validate(spec.base);
    write_preamble(spec, out);
    if (spec.variable == "tb")
        sweep_tb(spec, out);
    else if (spec.variable == "ps")
        sweep_ps(spec, out);
    else if (spec.variable == "m")
        sweep_m(spec, out);
    else if (spec.variable == "offset")
        sweep_offset(spec, out);
    else if (spec.variable == "mismatch")
        sweep_mismatch(spec, out);
    else if (spec.variable == "interference_db")
        sweep_interference(spec, out);
    else
        throw config_error("sweep: unknown variable '" + spec.variable + "'");
}

}  // namespace bswpt
