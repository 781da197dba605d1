#pragma once

#include <iosfwd>

#include "clfbl/scenario.hpp"

namespace clfbl::cli {

// Process exit statuses. Stable; documented in the README.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInfeasible = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitValidationFailed = 3;
inline constexpr int kExitIo = 4;

struct CommandOptions {
    bool allow_high_noise = false;        // solve: accept N >= p_DL
    double corrupt_derivative_scale = 1;  // validate: negative-control hook
};

/// JSON result on `out`, readable summary on `err`.
int cmd_solve(const Scenario& sc, const CommandOptions& opts, std::ostream& out, std::ostream& err);

/// Writes case_study_grid.csv and case_study_summary.csv to run.output_dir.
int cmd_case_study(const Scenario& sc, std::ostream& out, std::ostream& err);

/// Writes sweep_grid.csv, sweep_summary.csv and sweep_meta.json to run.output_dir.
int cmd_sweep(const Scenario& sc, std::ostream& out, std::ostream& err);

int cmd_validate(const Scenario& sc, const CommandOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace clfbl::cli
