#pragma once

// Parameter-sweep runners and their CSV emission. Every CSV starts with a
// '#' preamble echoing the full parameter set, seed and tool version, so a
// result file is regenerable from itself. Numbers are written as lowercase
// scientific with 9 significant digits; rows follow input order; line
// endings are LF.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bswpt/config.hpp"
#include "bswpt/engine.hpp"

namespace bswpt {

inline constexpr const char* kToolVersion = "1.0.0";

struct SweepSpec {
    std::string variable;        // tb | ps | m | offset | mismatch | interference_db
    std::vector<double> values;  // sweep points, strictly increasing (ns' for mismatch)
    SystemParams base;
    HarvesterModel harvester;
    SimScenario scenario = SimScenario::Balanced;
    SimPath path = SimPath::Asymptotic;
    long trials = 10000;
    std::uint64_t seed = 1;
    int workers = 0;
    std::vector<long> mismatch_chip_rates = {2, 10, 40};  // chips per symbol
};

// Writes the sweep CSV to `out`. Throws config_error / invalid_parameter_error
// on an inconsistent spec.
void run_sweep(const SweepSpec& spec, std::ostream& out);

// Scientific, 9 significant digits, lowercase.
std::string format_number(double v);

}  // namespace bswpt
