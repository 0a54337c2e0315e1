#pragma once

// Self-check suite behind `crjc verify`: invariants and oracle equivalence
// for every module, reported check by check.

#include <string>
#include <vector>

namespace crjc {

enum class VerifyLevel { fast, full };

struct CheckResult
{
    std::string name;       ///< operation under test, e.g. "propagate_counter"
    std::string component;  ///< grid point or case label
    double tolerance;
    double observed;
    bool pass;
};

struct VerifyReport
{
    VerifyLevel level = VerifyLevel::fast;
    int cutoff = 0;
    std::vector<CheckResult> checks;
    double seconds = 0.0;

    bool ok() const;
    std::string to_json() const;
};

struct VerifyOptions
{
    VerifyLevel level = VerifyLevel::fast;
    /// Mutation canary: negates the coupling weights of the closed-form
    /// counter-rotating propagator before it is compared with the oracle.
    bool flip_g_sign = false;
};

VerifyReport run_verify(const VerifyOptions& opts);

} // namespace crjc
