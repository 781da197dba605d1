#include "clfbl/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "clfbl/derivatives.hpp"
#include "clfbl/errors.hpp"

namespace clfbl {

const char* to_string(OptimumCase c) {
    switch (c) {
        case OptimumCase::LeftBoundary: return "LEFT_BOUNDARY";
        case OptimumCase::RightBoundary: return "RIGHT_BOUNDARY";
        case OptimumCase::InteriorRoot: return "INTERIOR_ROOT";
    }
    return "UNKNOWN";
}

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Solved: return "SOLVED";
        case SolveStatus::EmptyDomain: return "EMPTY_DOMAIN";
        case SolveStatus::EmptyIntegerRange: return "EMPTY_INTEGER_RANGE";
    }
    return "UNKNOWN";
}

std::optional<ContinuousOptimum> optimize_continuous(const SystemConfig& cfg) {
    const DomainBounds dom = feasible_domain(cfg);
    if (dom.empty) return std::nullopt;

    const int sign_lo = d_eps_cl_dn_scaled(cfg, dom.n_lo).sign;
    const int sign_hi = d_eps_cl_dn_scaled(cfg, dom.n_hi).sign;

    ContinuousOptimum out;
    if (sign_lo >= 0) {
        out.n_ul = dom.n_lo;
        out.optimum_case = OptimumCase::LeftBoundary;
        out.ambiguous = sign_hi <= 0;
        if (sign_lo > 0 && sign_hi < 0) {
            std::ostringstream os;
            os << "d eps_CL/d n_UL decreases across [" << dom.n_lo << ", " << dom.n_hi
               << "]: positive at the left bound, negative at the right";
            throw ModelConsistencyError(os.str());
        }
        return out;
    }
    if (sign_hi <= 0) {
        out.n_ul = dom.n_hi;
        out.optimum_case = OptimumCase::RightBoundary;
        return out;
    }

    // g(lo) < 0 < g(hi) and g is increasing: bisect on its sign.
    double lo = dom.n_lo;
    double hi = dom.n_hi;
    int it = 0;
    while (hi - lo > kRootTolerance) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        ++it;
        const int s = d_eps_cl_dn_scaled(cfg, mid).sign;
        if (s == 0) {
            lo = hi = mid;
            break;
        }
        (s > 0 ? hi : lo) = mid;
    }
    out.n_ul = 0.5 * (lo + hi);
    out.optimum_case = OptimumCase::InteriorRoot;
    out.iterations = it;
    return out;
}

std::optional<std::int64_t> refine_integer(const SystemConfig& cfg, double n_ul_cont) {
    const DomainBounds dom = feasible_domain(cfg);
    if (dom.empty) return std::nullopt;
    const auto lo = static_cast<std::int64_t>(std::ceil(dom.n_lo));
    const auto hi = static_cast<std::int64_t>(std::floor(dom.n_hi));
    if (lo > hi) return std::nullopt;

    auto clamp = [&](double v) { return std::clamp(static_cast<std::int64_t>(v), lo, hi); };
    const std::int64_t below = clamp(std::floor(n_ul_cont));
    const std::int64_t above = clamp(std::ceil(n_ul_cont));
    if (below == above) return below;
    const double e_below = loop_state(cfg, static_cast<double>(below)).log_eps_cl;
    const double e_above = loop_state(cfg, static_cast<double>(above)).log_eps_cl;
    return e_above < e_below ? above : below;
}

FeasibilityReport check_feasibility(SolveResult& result, const SystemConfig& cfg) {
    FeasibilityReport rep;
    rep.ul_violated = !(result.eps_ul <= cfg.max_error);
    rep.dl_violated = !(result.eps_dl <= cfg.max_error);
    auto describe = [&](const char* dir, double eps) {
        std::ostringstream os;
        os << dir << " error rate " << eps << " exceeds eps_max " << cfg.max_error;
        rep.diagnostics.push_back(os.str());
    };
    if (rep.ul_violated) describe("UL", result.eps_ul);
    if (rep.dl_violated) describe("DL", result.eps_dl);
    rep.feasible = !rep.ul_violated && !rep.dl_violated;
    result.feasible = rep.feasible;
    result.diagnostics.insert(result.diagnostics.end(), rep.diagnostics.begin(), rep.diagnostics.end());
    return rep;
}

SolveResult solve(const SystemConfig& cfg) {
    cfg.validate();
    SolveResult r;
    r.domain = feasible_domain(cfg);
    if (r.domain.empty) {
        r.status = SolveStatus::EmptyDomain;
        std::ostringstream os;
        os << "empty domain: max(9, d) = " << r.domain.n_lo << " > min(eta, n_max - d) = " << r.domain.n_hi;
        r.diagnostics.push_back(os.str());
        return r;
    }
    const auto cont = optimize_continuous(cfg);
    r.n_ul_cont = cont->n_ul;
    r.optimum_case = cont->optimum_case;
    r.iterations = cont->iterations;
    if (cont->ambiguous)
        r.diagnostics.push_back("derivative sign admits both boundary cases; left boundary chosen");

    const auto n_int = refine_integer(cfg, cont->n_ul);
    if (!n_int) {
        r.status = SolveStatus::EmptyIntegerRange;
        std::ostringstream os;
        os << "no integer blocklength in [" << r.domain.n_lo << ", " << r.domain.n_hi << "]";
        r.diagnostics.push_back(os.str());
        return r;
    }
    r.n_ul = *n_int;
    const double n = static_cast<double>(r.n_ul);
    r.n_dl = cfg.max_blocklength - n;
    r.p_ul = ul_power_of_blocklength(cfg, n);
    const LoopState ls = loop_state(cfg, n);
    r.eps_ul = ls.ul.eps;
    r.eps_dl = ls.dl.eps;
    r.eps_cl = loop_error_approx(r.eps_ul, r.eps_dl);
    r.r_loop = loop_reliability(r.eps_ul, r.eps_dl);
    check_feasibility(r, cfg);
    return r;
}

}  // namespace clfbl
