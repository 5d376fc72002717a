#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "shadow_transport/json_io.hpp"

namespace shadow_transport::cli {

enum ExitCode : int { kSuccess = 0, kDomainError = 1, kUsageError = 2 };

/// Runs one subcommand; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct VerifyFailure {
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    std::string reason;
};

struct VerifyReport {
    std::size_t trials = 0;
    std::vector<VerifyFailure> failures;
    double max_value_gap = 0.0;
    double max_cell_gap = 0.0;
    double max_duality_gap = 0.0;
};

/// pi^D against the LP optimum for the default cost on random instances.
VerifyReport verify_experiment(std::size_t trials, std::uint64_t seed, std::size_t max_atoms);

struct StabilityReport {
    std::size_t trials = 0;
    std::size_t violations = 0;            // W(S(mu), S'(mu')) <= W(mu, mu') + 2 W(nu, nu')
    std::size_t initial_violations = 0;    // same target: <= W(mu, mu')
    std::size_t target_violations = 0;     // same source: <= 2 W(nu, nu')
    double max_violation = 0.0;            // worst excess over the bound, relative to scale
    std::vector<double> tightness;         // LHS / RHS per trial with RHS > 0
};

/// Random quadruples with matching masses and mu <=_pcd nu, mu' <=_pcd nu'.
StabilityReport stability_experiment(std::size_t trials, std::uint64_t seed);

json::json to_json(const VerifyReport& r);
json::json to_json(const StabilityReport& r);

}  // namespace shadow_transport::cli
