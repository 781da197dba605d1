#include "clfbl/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <random>
#include <thread>

#include "clfbl/errors.hpp"

namespace clfbl {

namespace {

constexpr std::uint64_t kShardTrials = 65536;
constexpr double kZ99 = 2.5758293035489004;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// [0, 1) with 53 random bits; fixed arithmetic so results do not depend on
// the standard library's distribution implementations.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

template <class Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    const std::size_t workers = std::min<std::size_t>(worker_count(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                try {
                    for (std::size_t i = next++; i < count; i = next++) fn(i);
                } catch (...) {
                    const std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                    next = count;
                }
            });
        }
    }
    if (error) std::rethrow_exception(error);
}

SweepRecord make_record(const SystemConfig& cfg, std::size_t grid_points) {
    SweepRecord rec;
    rec.noise = cfg.noise_power;
    rec.domain = feasible_domain(cfg);
    rec.result = solve(cfg);
    rec.scan = convexity_scan(cfg, grid_points);
    return rec;
}

}  // namespace

unsigned worker_count() {
    if (const char* env = std::getenv("CLFBL_MAX_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

SweepRecord run_case_study(const SystemConfig& cfg, std::size_t grid_points) {
    cfg.validate();
    return make_record(cfg, grid_points);
}

std::vector<double> noise_grid(double lo, double hi, std::size_t n_points) {
    if (!(lo > 0 && hi > lo)) throw DomainError("noise grid needs 0 < lo < hi");
    if (n_points < 2) throw DomainError("noise grid needs at least 2 points");
    std::vector<double> out(n_points);
    const double log_lo = std::log(lo);
    const double log_span = std::log(hi) - log_lo;
    for (std::size_t i = 0; i < n_points; ++i)
        out[i] = std::exp(log_lo + log_span * static_cast<double>(i) / static_cast<double>(n_points - 1));
    out.front() = lo;
    out.back() = hi;
    return out;
}

std::vector<double> noise_grid(double dl_power, std::size_t n_points) {
    return noise_grid(dl_power * 1e-4, dl_power * (1 - 1e-3), n_points);
}

std::vector<SweepRecord> sweep_noise(const SystemConfig& cfg, const std::vector<double>& noises,
                                     std::size_t grid_points) {
    cfg.validate();
    std::vector<SweepRecord> out(noises.size());
    parallel_for(noises.size(), [&](std::size_t i) { out[i] = make_record(cfg.with_noise(noises[i]), grid_points); });
    return out;
}

std::vector<SweepRecord> sweep_noise(const SystemConfig& cfg, std::size_t n_points, std::size_t grid_points) {
    return sweep_noise(cfg, noise_grid(cfg.dl_power, n_points), grid_points);
}

std::optional<std::int64_t> grid_search_oracle(const SystemConfig& cfg) {
    const DomainBounds dom = feasible_domain(cfg);
    if (dom.empty) return std::nullopt;
    const auto lo = static_cast<std::int64_t>(std::ceil(dom.n_lo));
    const auto hi = static_cast<std::int64_t>(std::floor(dom.n_hi));
    if (lo > hi) return std::nullopt;
    std::int64_t best = lo;
    double best_val = std::numeric_limits<double>::infinity();
    for (std::int64_t n = lo; n <= hi; ++n) {
        const double v = loop_state(cfg, static_cast<double>(n)).log_eps_cl;
        if (v < best_val) {
            best_val = v;
            best = n;
        }
    }
    return best;
}

MonteCarloEstimate simulate_loop(double eps_ul, double eps_dl, std::uint64_t trials, std::uint64_t seed) {
    if (trials == 0) throw DomainError("monte carlo needs at least one trial");
    if (!(eps_ul >= 0 && eps_ul <= 1 && eps_dl >= 0 && eps_dl <= 1))
        throw DomainError("monte carlo error rates must lie in [0, 1]");

    const std::uint64_t shards = (trials + kShardTrials - 1) / kShardTrials;
    std::vector<std::uint64_t> wins(shards, 0);
    parallel_for(shards, [&](std::size_t k) {
        std::mt19937_64 rng(splitmix64(seed ^ splitmix64(k)));
        const std::uint64_t begin = k * kShardTrials;
        const std::uint64_t n = std::min(kShardTrials, trials - begin);
        std::uint64_t ok = 0;
        for (std::uint64_t t = 0; t < n; ++t) {
            if (unit_uniform(rng) < eps_ul) continue;
            if (unit_uniform(rng) < eps_dl) continue;
            ++ok;
        }
        wins[k] = ok;
    });

    MonteCarloEstimate est;
    est.trials = trials;
    for (auto w : wins) est.successes += w;
    est.r_loop = static_cast<double>(est.successes) / static_cast<double>(trials);
    const double half = kZ99 * std::sqrt(est.r_loop * (1 - est.r_loop) / static_cast<double>(trials));
    est.ci_lo = std::max(0.0, est.r_loop - half);
    est.ci_hi = std::min(1.0, est.r_loop + half);
    est.eps_ul = eps_ul;
    est.eps_dl = eps_dl;
    est.seed = seed;
    est.generator = kMonteCarloGenerator;
    return est;
}

MonteCarloEstimate monte_carlo_validate(const SystemConfig& cfg, double n_ul, std::uint64_t trials,
                                        std::uint64_t seed) {
    const LoopState ls = loop_state(cfg, n_ul);
    return simulate_loop(ls.ul.eps, ls.dl.eps, trials, seed);
}

double noise_for_target_error(const SystemConfig& cfg, double target, double lo, double hi) {
    auto achieved = [&](double noise) {
        const SolveResult r = solve(cfg.with_noise(noise));
        return r.solved() ? r.eps_cl : std::numeric_limits<double>::infinity();
    };
    double a = std::log(lo);
    double b = std::log(hi);
    for (int i = 0; i < 80; ++i) {
        const double m = 0.5 * (a + b);
        (achieved(std::exp(m)) < target ? a : b) = m;
    }
    return std::exp(0.5 * (a + b));
}

}  // namespace clfbl
