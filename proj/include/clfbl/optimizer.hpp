#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "clfbl/energy_coupling.hpp"
#include "clfbl/fbl_model.hpp"

namespace clfbl {

enum class OptimumCase { LeftBoundary, RightBoundary, InteriorRoot };

const char* to_string(OptimumCase c);

/// Bisection stops once the bracketing interval is this narrow (bits).
inline constexpr double kRootTolerance = 1e-6;

struct ContinuousOptimum {
    double n_ul = 0;
    OptimumCase optimum_case = OptimumCase::InteriorRoot;
    int iterations = 0;
    // g(n_lo) >= 0 and g(n_hi) <= 0 at once (flat g); LeftBoundary was chosen.
    bool ambiguous = false;
};

/// Minimizer of eps_CL over the convex domain by the boundary-sign case
/// split, with bisection on the sign of d eps_CL / d n_UL in the interior
/// case. Empty domain gives nullopt. Throws ModelConsistencyError on a
/// sign pattern convexity rules out.
std::optional<ContinuousOptimum> optimize_continuous(const SystemConfig& cfg);

/// Better of floor/ceil of n_ul_cont inside [ceil(n_lo), floor(n_hi)];
/// ties go to the smaller blocklength. nullopt if that range is empty.
std::optional<std::int64_t> refine_integer(const SystemConfig& cfg, double n_ul_cont);

enum class SolveStatus { Solved, EmptyDomain, EmptyIntegerRange };

const char* to_string(SolveStatus s);

struct SolveResult {
    SolveStatus status = SolveStatus::Solved;
    DomainBounds domain;
    double n_ul_cont = 0;
    std::int64_t n_ul = 0;
    double n_dl = 0;  // n_max - n_ul
    double p_ul = 0;
    double eps_ul = 0;
    double eps_dl = 0;
    double eps_cl = 0;
    double r_loop = 0;
    OptimumCase optimum_case = OptimumCase::InteriorRoot;
    bool feasible = false;
    int iterations = 0;
    std::vector<std::string> diagnostics;

    bool solved() const { return status == SolveStatus::Solved; }
};

struct FeasibilityReport {
    bool feasible = true;
    bool ul_violated = false;
    bool dl_violated = false;
    std::vector<std::string> diagnostics;
};

/// Per-direction eps_max check (inclusive). Sets result.feasible and appends
/// the diagnostics to result.diagnostics.
FeasibilityReport check_feasibility(SolveResult& result, const SystemConfig& cfg);

/// Domain, continuous optimum, integer refinement, power and error fill-in,
/// feasibility. Infeasible domains are reported through status, not thrown.
SolveResult solve(const SystemConfig& cfg);

}  // namespace clfbl
