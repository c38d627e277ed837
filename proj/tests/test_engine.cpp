#include <doctest.h>

#include <cmath>

#include "bswpt/engine.hpp"

using namespace bswpt;

namespace {

SystemParams paper_defaults(long ns, long nc, int m = 500) {
    SystemParams p;
    p.ns = ns;
    p.nc = nc;
    p.m = m;
    return p;  // remaining fields already carry the calibrated defaults
}

}  // namespace

TEST_SUITE("engine") {

TEST_CASE("runs are bit-identical across reruns and worker counts") {
    SystemParams p = paper_defaults(4, 40, 64);
    HarvesterModel h;
    ScenarioSpec spec{SimScenario::Pn, 0.0};
    const RunReport r1 = run_trials(p, h, spec, SimPath::Exact, 96, 123, 1);
    const RunReport r4 = run_trials(p, h, spec, SimPath::Exact, 96, 123, 4);
    const RunReport r8 = run_trials(p, h, spec, SimPath::Exact, 96, 123, 8);
    CHECK(r1.mean_q == r4.mean_q);
    CHECK(r1.mean_q == r8.mean_q);
    CHECK(r1.mean_q_rf == r8.mean_q_rf);
    CHECK(r1.stderr_q == r8.stderr_q);
    CHECK(r1.mean_magnitude_ratio == r8.mean_magnitude_ratio);

    const RunReport again = run_trials(p, h, spec, SimPath::Exact, 96, 123, 3);
    CHECK(again.mean_q == r1.mean_q);
}

TEST_CASE("balanced scenario cancels the ratio in every trial") {
    SystemParams p = paper_defaults(4, 40, 32);
    HarvesterModel h;
    ScenarioSpec spec{SimScenario::Balanced, 0.0};
    const RunReport r = run_trials(p, h, spec, SimPath::Exact, 200, 7, 0);
    CHECK(r.mean_magnitude_ratio == 0.0);
    CHECK(r.ratio_missing == 0);
    CHECK(r.resampled == 0);
}

TEST_CASE("exact and asymptotic paths agree on the balanced scenario") {
    SystemParams p = paper_defaults(4, 40, 500);
    HarvesterModel h;
    ScenarioSpec spec{SimScenario::Balanced, 0.0};

    // Single-trial comparison in a signal-dominated setting. At the
    // default noise level the correlator output is noise-dominated and the
    // beam/noise cross terms (which the large-array forms suppress)
    // fluctuate by tens of percent per trial; only the means agree there.
    SystemParams quiet = p;
    quiet.sigma_n2 = 1e-22;
    const RunReport one_exact = run_trials(quiet, h, spec, SimPath::Exact, 1, 99, 0);
    const RunReport one_asym = run_trials(quiet, h, spec, SimPath::Asymptotic, 1, 99, 0);
    CHECK(std::abs(one_exact.mean_q - one_asym.mean_q) / one_asym.mean_q < 0.10);

    const RunReport ex = run_trials(p, h, spec, SimPath::Exact, 1000, 5, 0);
    const RunReport as = run_trials(p, h, spec, SimPath::Asymptotic, 1000, 5, 0);
    CHECK(std::abs(ex.mean_q - as.mean_q) / as.mean_q < 0.10);
}

TEST_CASE("exact and asymptotic paths agree on the pn scenario") {
    SystemParams p = paper_defaults(4, 40, 500);
    HarvesterModel h;
    ScenarioSpec spec{SimScenario::Pn, 0.0};
    const RunReport ex = run_trials(p, h, spec, SimPath::Exact, 1000, 5, 0);
    const RunReport as = run_trials(p, h, spec, SimPath::Asymptotic, 1000, 5, 0);
    CHECK(std::abs(ex.mean_q - as.mean_q) / as.mean_q < 0.10);
}

TEST_CASE("magnitude ratio grows with the training duration") {
    HarvesterModel h;
    double prev = 0.0;
    for (long ns : {1L, 2L, 4L, 8L}) {
        SystemParams p = paper_defaults(ns, 10 * ns, 128);
        const double ratio = magnitude_ratio_stat(p, 1500, 31, 0);
        CHECK(ratio > prev);
        prev = ratio;
    }
    // The ambient component dominates by orders of magnitude throughout.
    CHECK(prev > 100.0);
}

TEST_CASE("standard error shrinks like the square root of the trial count") {
    SystemParams p = paper_defaults(4, 40, 500);
    HarvesterModel h;
    ScenarioSpec spec{SimScenario::Balanced, 0.0};
    const double e2 = run_trials(p, h, spec, SimPath::Asymptotic, 100, 11, 0).stderr_q;
    const double e3 = run_trials(p, h, spec, SimPath::Asymptotic, 1000, 11, 0).stderr_q;
    const double e4 = run_trials(p, h, spec, SimPath::Asymptotic, 10000, 11, 0).stderr_q;
    CHECK(e2 > e3);
    CHECK(e3 > e4);
    CHECK(e2 / e3 == doctest::Approx(std::sqrt(10.0)).epsilon(0.5));
    CHECK(e3 / e4 == doctest::Approx(std::sqrt(10.0)).epsilon(0.5));
}

TEST_CASE("scenario and parameter consistency is enforced") {
    HarvesterModel h;
    // Odd chips-per-symbol ratio cannot satisfy the balance criterion.
    SystemParams p = paper_defaults(4, 12);
    p.tc = p.ts * 4.0 / 12.0;
    ScenarioSpec spec{SimScenario::Balanced, 0.0};
    CHECK_THROWS_WITH_AS(run_trials(p, h, spec, SimPath::Exact, 10, 1, 0),
                         doctest::Contains("even"), invalid_parameter_error);

    // The mismatch regime has no closed form.
    SystemParams q = paper_defaults(10, 400);
    q.ts = 20e-6;
    q.tc = 0.5e-6;
    ScenarioSpec mm{SimScenario::Mismatch, 25e-6};
    CHECK_THROWS_WITH_AS(run_trials(q, h, mm, SimPath::Asymptotic, 10, 1, 0),
                         doctest::Contains("closed form"), invalid_parameter_error);

    CHECK_THROWS_AS(run_trials(q, h, mm, SimPath::Exact, 0, 1, 0), invalid_parameter_error);
}

TEST_CASE("interference scenario with zero power reduces to balanced") {
    SystemParams p = paper_defaults(4, 40, 64);
    p.sigma_i2 = 0.0;
    HarvesterModel h;
    ScenarioSpec intf{SimScenario::Interference, 0.0};
    ScenarioSpec bal{SimScenario::Balanced, 0.0};
    const RunReport a = run_trials(p, h, intf, SimPath::Exact, 200, 3, 0);
    const RunReport b = run_trials(p, h, bal, SimPath::Exact, 200, 3, 0);
    CHECK(a.mean_q == b.mean_q);  // identical draws, identical flow

    const RunReport c = run_trials(p, h, intf, SimPath::Asymptotic, 200, 3, 0);
    const RunReport d = run_trials(p, h, bal, SimPath::Asymptotic, 200, 3, 0);
    CHECK(c.mean_q == doctest::Approx(d.mean_q).epsilon(1e-12));
}

TEST_CASE("interference raises the noise floor") {
    SystemParams p = paper_defaults(4, 40, 500);
    p.ts = 20e-6;
    p.tc = 2e-6;
    HarvesterModel h;
    ScenarioSpec spec{SimScenario::Interference, 0.0};
    SystemParams loud = p;
    loud.sigma_i2 = sigma_i2_from_db(20.0, p);
    const double quiet_q = run_trials(p, h, spec, SimPath::Asymptotic, 4000, 13, 0).mean_q;
    const double loud_q = run_trials(loud, h, spec, SimPath::Asymptotic, 4000, 13, 0).mean_q;
    CHECK(loud_q < 0.2 * quiet_q);
}

TEST_CASE("report echoes the run inputs") {
    SystemParams p = paper_defaults(2, 20, 16);
    HarvesterModel h;
    ScenarioSpec spec{SimScenario::Pn, 0.0};
    const RunReport r = run_trials(p, h, spec, SimPath::Asymptotic, 25, 42, 0);
    CHECK(r.trials == 25);
    CHECK(r.master_seed == 42);
    CHECK(r.scenario == "pn");
    CHECK(r.path == SimPath::Asymptotic);
    CHECK(r.params.ns == 2);
    CHECK(r.harvester.c0 == h.c0);
    CHECK(r.mean_q > 0.0);
    CHECK(r.stderr_q > 0.0);
}

}  // TEST_SUITE
