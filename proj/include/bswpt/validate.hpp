#pragma once

// Self-check suite behind the `validate` CLI subcommand: oracle
// equivalences, cancellation identities, sequence properties, asymptotic
// moments and formula reductions.

#include <cstdint>
#include <string>
#include <vector>

namespace bswpt {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

// `inject_fault` flips one chip of a balanced sequence before the
// cancellation check; the suite must then fail. Used to prove the checks
// can actually fire.
std::vector<CheckResult> run_validation(std::uint64_t seed, bool inject_fault = false);

}  // namespace bswpt
