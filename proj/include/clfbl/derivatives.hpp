#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "clfbl/energy_coupling.hpp"
#include "clfbl/fbl_model.hpp"
#include "clfbl/signed_log.hpp"

namespace clfbl {

/// First and second derivative information of the closed-loop error at one
/// UL blocklength. Derivatives are with respect to n_UL.
struct DerivativeBundle {
    double n_ul = 0;
    double phi_ul = 0;    // -(ln 2)/sqrt(2 pi) exp(-x_UL^2 / 2)
    double phi_dl = 0;
    double xi = 0;        // phi_UL / (2 ln2 beta_UL V_UL^2 n_UL (1+gamma_UL)^3)
    double eta = 0;
    double rho = 0;       // (M ln 2)^2 n_UL
    double delta_ul = 0;
    double d_eps_ul = 0;  // analytic
    double d_eps_dl = 0;  // analytic
    double d_eps_cl = 0;
    double d2_eps_cl_fd = 0;  // plain central differences on eps_CL

    // Underflow-free forms of the above.
    SignedLog d_eps_cl_scaled;
    SignedLog d2_eps_cl_scaled;  // sum of per-link log-domain differences
};

/// The (1+gamma)^-2 cubic in gamma_UL that appears in the expanded UL derivative.
double delta_ul(double gamma, double bandwidth = 1.0);

/// Analytic d eps_UL / d n_UL under the energy equality.
double d_eps_ul_dn(const SystemConfig& cfg, double n_ul);
SignedLog d_eps_ul_dn_scaled(const SystemConfig& cfg, double n_ul);

/// Analytic d eps_DL / d n_UL with n_DL = n_max - n_UL.
double d_eps_dl_dn(const SystemConfig& cfg, double n_ul);
SignedLog d_eps_dl_dn_scaled(const SystemConfig& cfg, double n_ul);

/// g(n) = d eps_CL / d n_UL; its sign drives the optimizer.
SignedLog d_eps_cl_dn_scaled(const SystemConfig& cfg, double n_ul);
double d_eps_cl_dn(const SystemConfig& cfg, double n_ul);

/// xi * eta * (2 ln2 omega_UL + delta_UL): the fully expanded UL derivative
/// as it is usually quoted. It does not agree with finite differences and is
/// kept only so the discrepancy stays measurable; nothing depends on it.
double closed_form_ul_derivative(const SystemConfig& cfg, double n_ul);

// ---------------------------------------------------------------------------
// Finite differences

enum class Stencil { Central, Forward, Backward };

/// max(1e-4, 1e-3 |n|)
double fd_step(double n);

/// Stencil whose sample points all stay inside [lo, hi] for the given order.
Stencil stencil_within(double n, double lo, double hi, int order);

/// Finite difference of order 1 or 2 with one Richardson step (h and 2h).
double fd_derivative(const std::function<double(double)>& f, double n, int order,
                     Stencil stencil = Stencil::Central);

/// Finite difference of f = exp(log_f), taken on log_f and mapped back by
/// the chain rule. Keeps full relative accuracy when f underflows.
SignedLog fd_derivative_log(const std::function<double(double)>& log_f, double n, int order,
                            Stencil stencil = Stencil::Central);

DerivativeBundle derivative_bundle(const SystemConfig& cfg, double n_ul);

// ---------------------------------------------------------------------------
// Grid scans

/// Uniform grid over [n_lo, n_hi]; a single point sits at n_lo.
std::vector<double> domain_grid(const DomainBounds& domain, std::size_t points);

struct GridSample {
    double n_ul = 0;
    double eps_ul = 0;
    double eps_dl = 0;
    double eps_cl = 0;
    double log_eps_ul = 0;
    double log_eps_dl = 0;
    double d_eps_cl = 0;        // analytic
    int sign_d_eps_cl = 0;      // from the underflow-free analytic form
    double d_eps_ul_fd = 0;
    double d_eps_dl_fd = 0;
    double d2_eps_cl = 0;       // log-domain FD, as a double
    int sign_d2_eps_cl = 0;
};

enum class ViolationKind { UlNotDecreasing, DlNotIncreasing, ClNotConvex };

const char* to_string(ViolationKind k);

struct ScanViolation {
    ViolationKind kind;
    double n_ul;
    double value;  // offending difference of log error rates, or the 2nd derivative
};

struct ConvexityScan {
    DomainBounds domain;
    bool infeasible = false;
    std::vector<GridSample> samples;
    std::vector<ScanViolation> violations;

    std::size_t count(ViolationKind k) const;
    /// What the optimizer needs: DL increasing and eps_CL convex.
    bool convex_and_dl_increasing() const {
        return count(ViolationKind::DlNotIncreasing) == 0 &&
               count(ViolationKind::ClNotConvex) == 0;
    }
};

/// Samples eps_UL, eps_DL, eps_CL and their derivatives on a uniform grid
/// over the feasible domain. Monotonicity is judged on consecutive grid
/// values (log domain); convexity on the FD second derivative at each point.
ConvexityScan convexity_scan(const SystemConfig& cfg, std::size_t grid_points = 200);

}  // namespace clfbl
