#pragma once

// Reproducible Monte Carlo engine. Each trial owns its own set of RNG
// substreams keyed by (master_seed, trial_index, role), results are
// stored by trial index and reduced in index order with compensated
// summation, so a run is bit-identical for any worker count.

#include <cstdint>
#include <string>

#include "bswpt/config.hpp"
#include "bswpt/types.hpp"

namespace bswpt {

enum class SimScenario { Pn, Balanced, Offset, Interference, Mismatch };
enum class SimPath { Exact, Asymptotic };

std::string to_string(SimScenario s);
std::string to_string(SimPath p);

struct ScenarioSpec {
    SimScenario kind = SimScenario::Balanced;
    // True on-air symbol duration for the mismatch scenario; 0 means the
    // designed p.ts. The replica delay comes from p.t_off.
    double ts_actual = 0.0;
};

struct TrialResult {
    double q_rf = 0.0;             // incident RF power, W
    double q = 0.0;                // harvested power, W
    double magnitude_ratio = 0.0;  // ||x_i|| / ||x_s||
    bool has_ratio = false;        // false when the ratio is 0/0
    long trial_index = 0;
};

struct RunReport {
    double mean_q = 0.0;
    double mean_q_rf = 0.0;
    double mean_magnitude_ratio = 0.0;  // over trials with a defined ratio
    double stderr_q = 0.0;              // sample std of q / sqrt(trials)
    long trials = 0;
    long ratio_missing = 0;    // trials whose ratio was 0/0
    long resampled = 0;        // degenerate-reference redraws
    std::uint64_t master_seed = 0;
    SimPath path = SimPath::Exact;
    std::string scenario;
    SystemParams params;
    HarvesterModel harvester;
};

// workers <= 0 picks a machine-dependent count; the results do not depend
// on the choice.
RunReport run_trials(const SystemParams& p, const HarvesterModel& h, const ScenarioSpec& spec,
                     SimPath path, long trials, std::uint64_t master_seed, int workers = 0);

// Mean correlator-output magnitude ratio under pseudo-noise training.
double magnitude_ratio_stat(const SystemParams& p, long trials, std::uint64_t master_seed,
                            int workers = 0);

}  // namespace bswpt
