#include "clfbl/validate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "clfbl/derivatives.hpp"
#include "clfbl/experiments.hpp"

namespace clfbl {

namespace {

constexpr double kWellConditionedX = 8.0;
constexpr double kFidelityTolerance = 1e-6;

SuiteResult derivative_fidelity(const SystemConfig& cfg, const ValidateOptions& opts) {
    SuiteResult s;
    s.name = "derivative-fidelity";
    const DomainBounds dom = feasible_domain(cfg);
    const double lo = cfg.payload_bits;
    const double hi = cfg.max_blocklength - cfg.payload_bits;
    auto eps_ul = [&](double n) { return loop_state(cfg, n).ul.eps; };
    auto eps_dl = [&](double n) { return loop_state(cfg, n).dl.eps; };

    struct Pair {
        double analytic, fd;
    };
    std::vector<Pair> ul, dl;
    for (double n : domain_grid(dom, opts.grid_points)) {
        const LoopState ls = loop_state(cfg, n);
        const Stencil st = stencil_within(n, lo, hi, 1);
        if (std::fabs(ls.ul.x) <= kWellConditionedX)
            ul.push_back({opts.analytic_derivative_scale * d_eps_ul_dn(cfg, n), fd_derivative(eps_ul, n, 1, st)});
        if (std::fabs(ls.dl.x) <= kWellConditionedX)
            dl.push_back({opts.analytic_derivative_scale * d_eps_dl_dn(cfg, n), fd_derivative(eps_dl, n, 1, st)});
    }
    auto worst = [](const std::vector<Pair>& v) {
        double scale = 0;
        for (const Pair& p : v) scale = std::max(scale, std::fabs(p.fd));
        double w = 0;
        if (scale == 0) return w;
        for (const Pair& p : v) w = std::max(w, std::fabs(p.analytic - p.fd) / scale);
        return w;
    };
    const double w_ul = worst(ul);
    const double w_dl = worst(dl);
    s.worst_residual = std::max(w_ul, w_dl);
    s.outcome = s.worst_residual <= kFidelityTolerance ? SuiteOutcome::Pass : SuiteOutcome::Fail;
    std::ostringstream os;
    os << ul.size() << " UL / " << dl.size() << " DL well-conditioned points, worst UL " << w_ul << ", DL "
       << w_dl;
    s.detail = os.str();
    return s;
}

SuiteResult convexity(const SystemConfig& cfg, const ValidateOptions& opts) {
    SuiteResult s;
    s.name = "convexity";
    const ConvexityScan scan = convexity_scan(cfg, opts.grid_points);
    s.outcome = scan.convex_and_dl_increasing() ? SuiteOutcome::Pass : SuiteOutcome::Fail;
    s.worst_residual = static_cast<double>(scan.count(ViolationKind::DlNotIncreasing) +
                                           scan.count(ViolationKind::ClNotConvex));
    std::ostringstream os;
    os << scan.samples.size() << " points, " << scan.count(ViolationKind::DlNotIncreasing)
       << " DL-monotonicity and " << scan.count(ViolationKind::ClNotConvex) << " convexity violations; note: "
       << scan.count(ViolationKind::UlNotDecreasing) << " points where eps_UL increases";
    s.detail = os.str();
    return s;
}

SuiteResult optimizer_vs_oracle(const SystemConfig& cfg) {
    SuiteResult s;
    s.name = "optimizer-vs-oracle";
    const SolveResult r = solve(cfg);
    const auto oracle = grid_search_oracle(cfg);
    if (!r.solved() || !oracle) {
        s.outcome = SuiteOutcome::Skipped;
        s.detail = "skipped: no integer blocklength in the domain";
        return s;
    }
    const double e_solve = loop_state(cfg, static_cast<double>(r.n_ul)).log_eps_cl;
    const double e_oracle = loop_state(cfg, static_cast<double>(*oracle)).log_eps_cl;
    const bool ok = r.n_ul == *oracle || e_solve == e_oracle;
    s.outcome = ok ? SuiteOutcome::Pass : SuiteOutcome::Fail;
    s.worst_residual = static_cast<double>(std::llabs(r.n_ul - *oracle));
    std::ostringstream os;
    os << "solve n_UL = " << r.n_ul << " (" << to_string(r.optimum_case) << "), oracle n_UL = " << *oracle;
    s.detail = os.str();
    return s;
}

SuiteResult monte_carlo(const SystemConfig& cfg, const ValidateOptions& opts) {
    SuiteResult s;
    s.name = "monte-carlo";
    const SolveResult r = solve(cfg);
    if (!r.solved()) {
        s.outcome = SuiteOutcome::Skipped;
        s.detail = "skipped: infeasible";
        return s;
    }
    const MonteCarloEstimate est = monte_carlo_validate(cfg, static_cast<double>(r.n_ul), opts.mc_trials, opts.seed);
    // The estimate moves in steps of 1/trials; a CI of zero width (no
    // observed failures) is widened by that resolution.
    const double resolution = 1.0 / static_cast<double>(opts.mc_trials);
    const bool ok = r.r_loop >= est.ci_lo - resolution && r.r_loop <= est.ci_hi + resolution;
    s.outcome = ok ? SuiteOutcome::Pass : SuiteOutcome::Fail;
    s.worst_residual = std::fabs(est.r_loop - r.r_loop);
    std::ostringstream os;
    os.precision(10);
    os << est.trials << " trials, estimate " << est.r_loop << " in [" << est.ci_lo << ", " << est.ci_hi
       << "], analytic " << r.r_loop;
    s.detail = os.str();
    return s;
}

}  // namespace

const char* to_string(SuiteOutcome o) {
    switch (o) {
        case SuiteOutcome::Pass: return "PASS";
        case SuiteOutcome::Fail: return "FAIL";
        case SuiteOutcome::Skipped: return "SKIP";
    }
    return "?";
}

std::vector<SuiteResult> run_validation(const SystemConfig& cfg, const ValidateOptions& opts) {
    cfg.validate();
    if (feasible_domain(cfg).empty) {
        std::vector<SuiteResult> out;
        for (const char* name : {"derivative-fidelity", "convexity", "optimizer-vs-oracle", "monte-carlo"})
            out.push_back({name, SuiteOutcome::Skipped, 0, "skipped: infeasible"});
        return out;
    }
    return {derivative_fidelity(cfg, opts), convexity(cfg, opts), optimizer_vs_oracle(cfg), monte_carlo(cfg, opts)};
}

}  // namespace clfbl
