#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "clfbl/derivatives.hpp"
#include "clfbl/optimizer.hpp"

namespace clfbl {

struct SweepRecord {
    double noise = 0;
    DomainBounds domain;
    SolveResult result;
    ConvexityScan scan;  // scan.samples is the per-point grid

    const std::vector<GridSample>& grid() const { return scan.samples; }
};

inline constexpr std::size_t kCaseStudyPoints = 500;
inline constexpr std::size_t kSweepNoisePoints = 50;
inline constexpr std::size_t kSweepGridPoints = 200;

/// Single-noise record with a dense grid over the feasible domain.
SweepRecord run_case_study(const SystemConfig& cfg, std::size_t grid_points = kCaseStudyPoints);

/// Logarithmic noise grid from p_DL * 1e-4 to p_DL * (1 - 1e-3), endpoints included.
std::vector<double> noise_grid(double dl_power, std::size_t n_points);
std::vector<double> noise_grid(double lo, double hi, std::size_t n_points);

/// One SweepRecord per noise value. Points are evaluated in parallel; the
/// output order and content do not depend on the worker count.
std::vector<SweepRecord> sweep_noise(const SystemConfig& cfg, const std::vector<double>& noises,
                                     std::size_t grid_points = kSweepGridPoints);
std::vector<SweepRecord> sweep_noise(const SystemConfig& cfg, std::size_t n_points = kSweepNoisePoints,
                                     std::size_t grid_points = kSweepGridPoints);

/// Exhaustive argmin of eps_CL over the integers of the feasible domain;
/// smallest n_ul wins ties. nullopt when no integer is feasible.
std::optional<std::int64_t> grid_search_oracle(const SystemConfig& cfg);

struct MonteCarloEstimate {
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double r_loop = 0;   // success fraction
    double ci_lo = 0;    // 99% normal-approximation interval, clipped to [0, 1]
    double ci_hi = 0;
    double eps_ul = 0;
    double eps_dl = 0;
    std::uint64_t seed = 0;
    std::string generator;

    bool contains(double r) const { return r >= ci_lo && r <= ci_hi; }
};

inline constexpr const char* kMonteCarloGenerator = "mt19937_64+splitmix64-shards/65536";

/// Simulates the one-shot loop with fixed per-link error rates. The DL is
/// attempted only after a UL success. Trials are split into fixed-size
/// shards with sub-seeds derived from the master seed, so the estimate is
/// independent of the worker count.
MonteCarloEstimate simulate_loop(double eps_ul, double eps_dl, std::uint64_t trials, std::uint64_t seed);

/// simulate_loop at the error rates the model assigns to n_ul.
MonteCarloEstimate monte_carlo_validate(const SystemConfig& cfg, double n_ul, std::uint64_t trials,
                                        std::uint64_t seed);

/// Noise power at which solve() reaches the target eps_CL, by bisection on
/// log N inside (lo, hi). Used to place Monte Carlo operating points.
double noise_for_target_error(const SystemConfig& cfg, double target, double lo, double hi);

/// Worker cap: CLFBL_MAX_THREADS if set, else hardware concurrency.
unsigned worker_count();

}  // namespace clfbl
