// Command-line front end: figure-style parameter sweeps to CSV, the
// validation suite, sequence dumps and the correlator partition dump.
//
// Exit codes: 0 success, 1 validation failure, 2 usage or config error.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bswpt/config.hpp"
#include "bswpt/correlator.hpp"
#include "bswpt/engine.hpp"
#include "bswpt/stochastics.hpp"
#include "bswpt/sweep.hpp"
#include "bswpt/training.hpp"
#include "bswpt/validate.hpp"

namespace {

using namespace bswpt;

struct CommonOpts {
    std::string config_path;
    std::uint64_t seed = 1;
    long trials = 10000;
    std::string path = "asymptotic";
    std::string scenario = "balanced";
    std::string out_path;
    int workers = 0;
};

std::pair<SystemParams, HarvesterModel> resolve_config(const CommonOpts& opts) {
    if (!opts.config_path.empty()) return load_config_file(opts.config_path);
    // Built-in calibrated defaults; equivalent to configs/default.cfg.
    SystemParams p;
    p.ns = 4;
    p.nc = 40;
    HarvesterModel h;
    validate(p);
    return {p, h};
}

SimScenario parse_scenario(const std::string& s) {
    if (s == "pn") return SimScenario::Pn;
    if (s == "balanced") return SimScenario::Balanced;
    if (s == "offset") return SimScenario::Offset;
    if (s == "interference") return SimScenario::Interference;
    if (s == "mismatch") return SimScenario::Mismatch;
    throw config_error("unknown scenario '" + s + "'");
}

SimPath parse_path(const std::string& s) {
    if (s == "exact") return SimPath::Exact;
    if (s == "asymptotic") return SimPath::Asymptotic;
    throw config_error("unknown path '" + s + "'");
}

std::vector<double> parse_values(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw config_error("--values: cannot parse number '" + item + "'");
        }
    }
    return out;
}

std::vector<double> default_grid(const std::string& variable, const SystemParams& p) {
    std::vector<double> v;
    if (variable == "tb") {
        for (int i = 1; i <= 40; ++i) v.push_back(static_cast<double>(i) * p.ts);
    } else if (variable == "ps") {
        v = {0.25, 0.5, 1.0, 2.0, 4.0};
    } else if (variable == "m") {
        v = {100, 200, 300, 500, 700, 1000};
    } else if (variable == "offset") {
        for (int i = 0; i <= 40; ++i) v.push_back(static_cast<double>(i) * p.tc / 20.0);
    } else if (variable == "mismatch") {
        for (int i = 6; i <= 15; ++i) v.push_back(static_cast<double>(i));
    } else if (variable == "interference_db") {
        v = {10, 15, 20, 25, 30, 35, 40, 45, 50};
    }
    return v;
}

int cmd_sweep(const CommonOpts& opts, const std::string& variable, const std::string& values) {
    auto [params, harvester] = resolve_config(opts);
    SweepSpec spec;
    spec.variable = variable;
    spec.base = params;
    spec.harvester = harvester;
    spec.scenario = parse_scenario(opts.scenario);
    spec.path = parse_path(opts.path);
    spec.trials = opts.trials;
    spec.seed = opts.seed;
    spec.workers = opts.workers;
    spec.values = values.empty() ? default_grid(variable, params) : parse_values(values);

    if (opts.out_path.empty()) {
        run_sweep(spec, std::cout);
    } else {
        std::ofstream out(opts.out_path, std::ios::binary);
        if (!out) throw config_error("cannot open output file '" + opts.out_path + "'");
        run_sweep(spec, out);
    }
    return 0;
}

int cmd_validate(const CommonOpts& opts, bool inject_fault) {
    const auto results = run_validation(opts.seed, inject_fault);
    bool all_ok = true;
    for (const auto& r : results) {
        std::cout << (r.passed ? "PASS" : "FAIL") << "  " << r.name << " -- " << r.detail
                  << "\n";
        all_ok = all_ok && r.passed;
    }
    std::cout << (all_ok ? "validation passed" : "validation FAILED") << "\n";
    return all_ok ? 0 : 1;
}

int cmd_dump_sequence(const CommonOpts& opts, const std::string& kind, long ns, long k, long nc,
                      long order, long row, int degree) {
    TrainingSequence seq;
    if (kind == "pn") {
        RngStream rng(opts.seed, 0, StreamLabel::chips);
        seq = gen_pn(nc, rng);
    } else if (kind == "balanced") {
        seq = gen_balanced(ns, k);
    } else if (kind == "alternating") {
        seq = gen_alternating(ns, k);
    } else if (kind == "walsh") {
        seq = walsh_hadamard_row(order, row);
    } else if (kind == "lfsr") {
        seq = gen_lfsr(degree);
    } else {
        throw config_error("unknown sequence kind '" + kind + "'");
    }
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!opts.out_path.empty()) {
        file.open(opts.out_path, std::ios::binary);
        if (!file) throw config_error("cannot open output file '" + opts.out_path + "'");
        os = &file;
    }
    for (std::size_t i = 0; i < seq.chips.size(); ++i)
        *os << (i ? "," : "") << seq.chips[i];
    *os << "\n";
    return 0;
}

int cmd_dump_breakpoints(const CommonOpts& opts, double t_off, double ts_actual) {
    auto [params, harvester] = resolve_config(opts);
    (void)harvester;
    RngStream sym(opts.seed, 0, StreamLabel::symbols);
    const double ts_eff = ts_actual > 0.0 ? ts_actual : params.ts;
    const long needed =
        static_cast<long>(std::ceil(derive(params).tb / ts_eff - 1e-9));
    const AmbientFrame frame = sample_ambient_n(params, needed, ts_eff, sym);
    const TrainingSequence seq =
        gen_alternating(params.ns, params.nc / params.ns, params.tc);
    const auto rows = breakpoint_partition(params, frame, seq, t_off, ts_eff);

    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!opts.out_path.empty()) {
        file.open(opts.out_path, std::ios::binary);
        if (!file) throw config_error("cannot open output file '" + opts.out_path + "'");
        os = &file;
    }
    *os << "t0,t1,recv_chip,replica_chip,symbol_re,symbol_im,backscatter_product,"
           "ambient_product\n";
    for (const auto& r : rows) {
        const double len = r.t1 - r.t0;
        const cplx bp =
            static_cast<double>(r.recv_chip * r.replica_chip) * r.symbol * len;
        const cplx ap = static_cast<double>(r.replica_chip) * r.symbol * len;
        *os << format_number(r.t0) << ',' << format_number(r.t1) << ',' << r.recv_chip << ','
            << r.replica_chip << ',' << format_number(r.symbol.real()) << ','
            << format_number(r.symbol.imag()) << ',' << format_number(bp.real()) << ','
            << format_number(ap.real()) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Retrodirective wireless power transfer with backscatter training: "
                 "link simulator and sweep runner"};
    app.require_subcommand(1);

    CommonOpts opts;
    app.add_option("--config", opts.config_path, "config file (key=value lines)");
    app.add_option("--seed", opts.seed, "master seed");
    app.add_option("--trials", opts.trials, "Monte Carlo trials per sweep point");
    app.add_option("--path", opts.path, "exact|asymptotic")
        ->check(CLI::IsMember({"exact", "asymptotic"}));
    app.add_option("--scenario", opts.scenario, "pn|balanced|offset|interference|mismatch")
        ->check(CLI::IsMember({"pn", "balanced", "offset", "interference", "mismatch"}));
    app.add_option("--out", opts.out_path, "output CSV path (default: stdout)");
    app.add_option("--threads", opts.workers, "worker threads (0 = auto)");

    auto* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep, emit CSV");
    sweep_cmd->fallthrough();
    std::string variable;
    std::string values;
    sweep_cmd->add_option("variable", variable, "tb|ps|m|offset|mismatch|interference_db")
        ->required()
        ->check(CLI::IsMember({"tb", "ps", "m", "offset", "mismatch", "interference_db"}));
    sweep_cmd->add_option("--values", values, "comma-separated sweep values (SI units)");

    auto* validate_cmd = app.add_subcommand("validate", "run the self-check suites");
    validate_cmd->fallthrough();
    bool inject_fault = false;
    validate_cmd->add_flag("--inject-fault", inject_fault,
                           "flip one chip of a balanced sequence; the suite must fail");

    auto* dump_cmd = app.add_subcommand("dump-sequence", "emit a chip sequence as one CSV row");
    dump_cmd->fallthrough();
    std::string kind = "balanced";
    long ns = 4, k = 2, nc = 40, order = 8, row = 1;
    int degree = 5;
    dump_cmd->add_option("--kind", kind, "pn|balanced|alternating|walsh|lfsr")
        ->check(CLI::IsMember({"pn", "balanced", "alternating", "walsh", "lfsr"}));
    dump_cmd->add_option("--ns", ns, "symbols (balanced/alternating)");
    dump_cmd->add_option("--chips-per-symbol", k, "chips per symbol (balanced/alternating)");
    dump_cmd->add_option("--nc", nc, "chip count (pn)");
    dump_cmd->add_option("--order", order, "Hadamard order (walsh)");
    dump_cmd->add_option("--row", row, "Hadamard row (walsh)");
    dump_cmd->add_option("--degree", degree, "LFSR register length (lfsr)");

    auto* bp_cmd =
        app.add_subcommand("dump-breakpoints", "emit the correlator partition as CSV");
    bp_cmd->fallthrough();
    double t_off = 0.0, ts_actual = 0.0;
    bp_cmd->add_option("--t-off", t_off, "replica delay, seconds");
    bp_cmd->add_option("--ts-actual", ts_actual, "on-air symbol duration (0 = designed)");

    try {
        app.parse(argc, argv);
        if (*sweep_cmd) return cmd_sweep(opts, variable, values);
        if (*validate_cmd) return cmd_validate(opts, inject_fault);
        if (*dump_cmd) return cmd_dump_sequence(opts, kind, ns, k, nc, order, row, degree);
        if (*bp_cmd) return cmd_dump_breakpoints(opts, t_off, ts_actual);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
