// Acceptance suite. Each criterion prints one PASS/FAIL line; the exit status
// is non-zero if any selected criterion fails.
//
//   clfbl_acceptance          run all criteria
//   clfbl_acceptance 2 5      run criteria 2 and 5

#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "clfbl/commands.hpp"
#include "clfbl/derivatives.hpp"
#include "clfbl/experiments.hpp"
#include "clfbl/optimizer.hpp"
#include "clfbl/scenario.hpp"

using namespace clfbl;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

SystemConfig table1() { return preset_scenario("table1").config; }

std::vector<SweepRecord> table1_sweep() { return sweep_noise(table1(), kSweepNoisePoints, kSweepGridPoints); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------

Outcome domain_reproduction() {
    const SystemConfig cfg = table1();
    const auto t0 = std::chrono::steady_clock::now();
    const DomainBounds d = feasible_domain(cfg);
    const double ms = 1e3 * seconds_since(t0);
    const bool ok = d.n_lo == 9 && std::fabs(d.n_hi - 54.1667) <= 1e-3 && d.binding_hi == UpperBound::Snr &&
                    !d.empty && ms < 1;
    return {ok, fmt("n_lo=%.17g n_hi=%.17g binding_hi=%s (%.4f ms, limit 1 ms)", d.n_lo, d.n_hi,
                    to_string(d.binding_hi), ms)};
}

Outcome sign_structure() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto recs = table1_sweep();
    const double s = seconds_since(t0);
    std::size_t ul = 0, dl = 0, ul_noises = 0, points = 0;
    double worst_ul = 0;
    for (const auto& r : recs) {
        points += r.scan.samples.size();
        const std::size_t u = r.scan.count(ViolationKind::UlNotDecreasing);
        ul += u;
        ul_noises += u > 0;
        dl += r.scan.count(ViolationKind::DlNotIncreasing);
        for (const auto& v : r.scan.violations)
            if (v.kind == ViolationKind::UlNotDecreasing) worst_ul = std::max(worst_ul, v.value);
    }
    const bool ok = ul == 0 && dl == 0 && s < 10;
    return {ok, fmt("%zu points over %zu N values: eps_UL increases at %zu points (%zu N values, largest "
                    "log-step %.3g), eps_DL non-increasing at %zu (%.2f s, limit 10 s)",
                    points, recs.size(), ul, ul_noises, worst_ul, dl, s)};
}

Outcome convexity() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto recs = table1_sweep();
    const double s = seconds_since(t0);
    std::size_t bad = 0, points = 0;
    for (const auto& r : recs) {
        points += r.scan.samples.size();
        for (const auto& g : r.scan.samples) bad += g.sign_d2_eps_cl <= 0;
    }
    const bool ok = bad == 0 && points == kSweepNoisePoints * kSweepGridPoints && s < 30;
    return {ok, fmt("%zu points, %zu with d2 eps_CL <= 0 (%.2f s, limit 30 s)", points, bad, s)};
}

Outcome derivative_fidelity() {
    const auto t0 = std::chrono::steady_clock::now();
    const SystemConfig base = table1();
    std::size_t n_ul = 0, n_dl = 0, bad = 0;
    double worst = 0;
    for (double noise : noise_grid(base.dl_power, kSweepNoisePoints)) {
        const SystemConfig cfg = base.with_noise(noise);
        const double lo = cfg.payload_bits;
        const double hi = cfg.max_blocklength - cfg.payload_bits;
        auto eps_ul = [&](double n) { return loop_state(cfg, n).ul.eps; };
        auto eps_dl = [&](double n) { return loop_state(cfg, n).dl.eps; };
        for (double n : domain_grid(feasible_domain(cfg), kSweepGridPoints)) {
            const LoopState ls = loop_state(cfg, n);
            const Stencil st = stencil_within(n, lo, hi, 1);
            auto check = [&](double analytic, double fd) {
                const double r = std::fabs(analytic - fd) / std::max(1.0, std::fabs(fd));
                worst = std::max(worst, r);
                bad += r > 1e-6;
            };
            if (std::fabs(ls.ul.x) <= 8) {
                check(d_eps_ul_dn(cfg, n), fd_derivative(eps_ul, n, 1, st));
                ++n_ul;
            }
            if (std::fabs(ls.dl.x) <= 8) {
                check(d_eps_dl_dn(cfg, n), fd_derivative(eps_dl, n, 1, st));
                ++n_dl;
            }
        }
    }
    const double s = seconds_since(t0);
    const bool ok = bad == 0 && n_ul > 0 && s < 30;
    return {ok, fmt("%zu UL and %zu DL well-conditioned points, %zu over tolerance, worst %.3g (%.2f s, limit 30 s)",
                    n_ul, n_dl, bad, worst, s)};
}

// Ties: a different integer is accepted when it attains the same eps_CL.
bool matches_oracle(const SystemConfig& cfg, std::size_t& checked, std::string& first_miss) {
    const auto oracle = grid_search_oracle(cfg);
    const SolveResult r = solve(cfg);
    if (!oracle) return !r.solved();
    ++checked;
    if (!r.solved()) {
        first_miss = fmt("N=%.6g: solve status %s", cfg.noise_power, to_string(r.status));
        return false;
    }
    if (r.n_ul == *oracle) return true;
    if (loop_state(cfg, static_cast<double>(r.n_ul)).log_eps_cl ==
        loop_state(cfg, static_cast<double>(*oracle)).log_eps_cl)
        return true;
    first_miss = fmt("N=%.6g E=%.6g p_DL=%.6g d=%g n_max=%g: solve %lld, oracle %lld", cfg.noise_power,
                     cfg.energy_budget, cfg.dl_power, cfg.payload_bits, cfg.max_blocklength,
                     static_cast<long long>(r.n_ul), static_cast<long long>(*oracle));
    return false;
}

Outcome optimizer_correctness() {
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t checked = 0, misses = 0;
    std::string first_miss;
    const SystemConfig base = table1();
    for (double noise : noise_grid(base.dl_power, kSweepNoisePoints))
        misses += !matches_oracle(base.with_noise(noise), checked, first_miss);
    const std::size_t sweep_checked = checked;

    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> u(0, 1);
    auto log_uniform = [&](double lo, double hi) { return std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * u(rng)); };
    std::size_t random_checked = 0;
    while (random_checked < 50) {
        SystemConfig c = base;
        c.frame_length.reset();
        c.energy_budget = log_uniform(1e-7, 1e-5);
        c.noise_power = log_uniform(1e-4, 1e-2);
        c.dl_power = log_uniform(1e-4, 1e-1);
        c.payload_bits = std::floor(8 + 57 * u(rng));
        c.max_blocklength = std::floor(500 + 4501 * u(rng));
        if (!grid_search_oracle(c)) continue;  // only feasible configs count
        std::size_t one = 0;
        misses += !matches_oracle(c, one, first_miss);
        ++random_checked;
    }
    const double s = seconds_since(t0);
    const bool ok = misses == 0 && s < 60;
    return {ok, fmt("%zu sweep + %zu random configs, %zu mismatches%s%s (%.2f s, limit 60 s)", sweep_checked,
                    random_checked, misses, first_miss.empty() ? "" : "; first: ", first_miss.c_str(), s)};
}

Outcome delta_anchor() {
    const double expected = (16 * std::log(2.0) - 8) / 4;
    const double got = delta_ul(1.0);
    const double err = std::fabs(got - expected);
    return {err <= 1e-12, fmt("delta_UL(1) = %.17g, expected %.17g, |diff| = %.3g", got, expected, err)};
}

Outcome approximation_audit() {
    const auto recs = table1_sweep();
    std::size_t points = 0, identity_bad = 0, product_checked = 0, product_bad = 0;
    double worst_identity = 0, worst_ratio = 0;
    for (const auto& r : recs) {
        for (const auto& g : r.scan.samples) {
            ++points;
            const double r_loop = loop_reliability(g.eps_ul, g.eps_dl);
            const double lhs = (1 - r_loop) - g.eps_cl;
            const double rhs = -g.eps_ul * g.eps_dl;
            // Relative to the operands of the subtraction, which are O(1).
            const double scale = std::max({r_loop, 1 - r_loop, g.eps_cl});
            const double rel = std::fabs(lhs - rhs) / scale;
            worst_identity = std::max(worst_identity, rel);
            identity_bad += rel > 1e-15;

            // eps_UL eps_DL < 1e-2 eps_CL, compared as logs so underflow cannot hide a violation.
            const double log_eps_cl = (SignedLog::from_log(g.log_eps_ul) + SignedLog::from_log(g.log_eps_dl)).log_abs;
            if (g.eps_cl < 0.1) {
                ++product_checked;
                const double log_ratio = g.log_eps_ul + g.log_eps_dl - log_eps_cl;
                worst_ratio = std::max(worst_ratio, std::exp(log_ratio));
                product_bad += !(log_ratio < std::log(1e-2));
            }
        }
    }
    const bool ok = identity_bad == 0 && product_bad == 0;
    return {ok, fmt("%zu points: identity residual worst %.3g (%zu over 1e-15); product check on %zu points with "
                    "eps_CL < 0.1, worst eps_UL*eps_DL/eps_CL %.3g (%zu over 1e-2)",
                    points, worst_identity, identity_bad, product_checked, worst_ratio, product_bad)};
}

Outcome monte_carlo_agreement() {
    const auto t0 = std::chrono::steady_clock::now();
    const SystemConfig base = table1();
    const double noise = noise_for_target_error(base, 1e-2, base.dl_power * 1e-4, base.dl_power * (1 - 1e-3));
    const SystemConfig cfg = base.with_noise(noise);
    const SolveResult r = solve(cfg);
    if (!r.solved()) return {false, fmt("no solvable operating point near eps_CL = 1e-2 (N = %.6g)", noise)};
    int hits = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const MonteCarloEstimate e = monte_carlo_validate(cfg, static_cast<double>(r.n_ul), 1'000'000, seed);
        hits += e.contains(r.r_loop);
    }
    const double s = seconds_since(t0);
    const bool ok = hits >= 9 && s < 30;
    return {ok, fmt("N=%.6g n_UL=%lld eps_CL=%.4g: analytic R_loop in the 99%% CI for %d/10 seeds (%.2f s, limit 30 s)",
                    noise, static_cast<long long>(r.n_ul), r.eps_cl, hits, s)};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Outcome determinism() {
    namespace fs = std::filesystem;
    const fs::path root = fs::temp_directory_path() / "clfbl_acceptance_determinism";
    fs::remove_all(root);
    Scenario sc = preset_scenario("table1");
    sc.noise_sweep = true;
    std::ostringstream sink;

    // Two plain repeats plus one single-threaded run.
    const char* threads[] = {nullptr, nullptr, "1"};
    std::vector<fs::path> dirs;
    for (int i = 0; i < 3; ++i) {
        if (threads[i]) setenv("CLFBL_MAX_THREADS", threads[i], 1);
        sc.run.output_dir = (root / std::to_string(i)).string();
        const int rc = cli::cmd_sweep(sc, sink, sink);
        if (threads[i]) unsetenv("CLFBL_MAX_THREADS");
        if (rc != cli::kExitOk) return {false, fmt("cmd_sweep exited %d", rc)};
        dirs.push_back(root / std::to_string(i));
    }
    std::size_t bytes = 0;
    for (const char* f : {"sweep_grid.csv", "sweep_summary.csv", "sweep_meta.json"}) {
        const std::string ref = slurp(dirs[0] / f);
        if (ref.empty()) return {false, fmt("%s is empty", f)};
        bytes += ref.size();
        for (std::size_t i = 1; i < dirs.size(); ++i)
            if (slurp(dirs[i] / f) != ref) return {false, fmt("%s differs between run 1 and run %zu", f, i + 1)};
    }
    fs::remove_all(root);
    return {true, fmt("3 runs (one single-threaded), %zu bytes identical across CSV and metadata files", bytes)};
}

struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all = {
        {1, "table1-domain", domain_reproduction},
        {2, "sign-structure", sign_structure},
        {3, "convexity", convexity},
        {4, "derivative-fidelity", derivative_fidelity},
        {5, "optimizer-vs-oracle", optimizer_correctness},
        {6, "delta-anchor", delta_anchor},
        {7, "approximation-audit", approximation_audit},
        {8, "monte-carlo", monte_carlo_agreement},
        {9, "determinism", determinism},
    };
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

    int failures = 0;
    for (const Criterion& c : all) {
        if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s  [%d] %-20s %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
        std::fflush(stdout);
        failures += !o.pass;
    }
    return failures == 0 ? 0 : 1;
}
