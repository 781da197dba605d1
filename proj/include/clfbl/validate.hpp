#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "clfbl/fbl_model.hpp"

namespace clfbl {

struct ValidateOptions {
    std::size_t grid_points = 200;
    std::uint64_t mc_trials = 1'000'000;
    std::uint64_t seed = 1;
    // Negative-control hook: multiplies the analytic derivatives before they
    // are compared with finite differences. 1 in normal use.
    double analytic_derivative_scale = 1.0;
};

enum class SuiteOutcome { Pass, Fail, Skipped };

const char* to_string(SuiteOutcome o);

struct SuiteResult {
    std::string name;
    SuiteOutcome outcome = SuiteOutcome::Pass;
    double worst_residual = 0;
    std::string detail;
};

/// Runs, on one configuration:
///   derivative-fidelity  analytic vs finite-difference first derivatives
///                        (|x| <= 8), residual normalized by the largest
///                        |FD| on the grid, must stay <= 1e-6
///   convexity            eps_DL increasing and eps_CL'' > 0 on the grid
///                        (eps_UL monotonicity is reported, not required)
///   optimizer-vs-oracle  solve() against exhaustive integer search
///   monte-carlo          simulated R_loop against the analytic product
/// Every suite is skipped when the domain is empty.
std::vector<SuiteResult> run_validation(const SystemConfig& cfg, const ValidateOptions& opts = {});

}  // namespace clfbl
