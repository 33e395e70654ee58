////////////////////////////////////////////////////////////////////////////////
// verify.hpp
////////////////////////////////////////////////////////////////////////////////
// Built-in self-verification: reduction chains, annihilation residuals,
// symmetrization roundtrips, commutation with rotations, Monte-Carlo
// geometry cross-checks, closed-form/generic agreement and the scaling laws.
// Deterministic for a fixed seed; one summary line per check.
////////////////////////////////////////////////////////////////////////////////
#pragma once

#include <iosfwd>

#include "sgehom/config.hpp"

namespace sgehom {

struct VerifyOptions {
    std::uint64_t seed = 20240101;
    // Test hook: scales one component orbit of an assembled nonlocal tensor by
    // 1.1 before the annihilation check, which must then fail.
    bool inject_aeq_perturbation = false;
    std::optional<JobConfig> config;  // adds config-specific checks
};

struct VerifyCheck {
    std::string name;
    double max_residual;
    double tolerance;
    bool passed;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    bool all_passed = true;
};

VerifyReport run_verify(const VerifyOptions &opts);

void print_verify(const VerifyReport &report, std::ostream &os);

}  // namespace sgehom
