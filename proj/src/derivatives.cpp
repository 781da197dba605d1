#include "clfbl/derivatives.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <span>

#include "clfbl/errors.hpp"

namespace clfbl {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kLogSqrt2Pi = 0.91893853320467274178;
const double kLogLn2 = std::log(kLn2);

// phi = -(ln 2)/sqrt(2 pi) exp(-x^2/2), kept in log form.
SignedLog scaled_phi(double x) { return SignedLog::from_log(kLogLn2 - kLogSqrt2Pi - 0.5 * x * x, -1); }

LinkState ul_link(const SystemConfig& cfg, double n_ul) {
    return link_state(n_ul, ul_power_of_blocklength(cfg, n_ul), cfg.ul_gain, cfg.noise_power,
                      cfg.payload_bits, cfg.bandwidth);
}

LinkState dl_link(const SystemConfig& cfg, double n_ul) {
    return link_state(cfg.max_blocklength - n_ul, cfg.dl_power, cfg.dl_gain, cfg.noise_power,
                      cfg.payload_bits, cfg.bandwidth);
}

// 2 ln2 beta V^2 n (1+gamma)^3, the denominator pulled out into xi.
double xi_denominator(const LinkState& s) {
    const double g1 = 1.0 + s.gamma;
    return 2.0 * kLn2 * s.beta * s.dispersion * s.dispersion * s.n * g1 * g1 * g1;
}

// Curly bracket multiplying xi:
//   2 V (1+g)^2 [ln2 (1+g) d - B g n] + ln2 omega n [2 g + V (1+g)^3]
double ul_bracket(const LinkState& s, double d, double bandwidth) {
    const double g = s.gamma;
    const double g1 = 1.0 + g;
    const double v = s.dispersion;
    const double from_omega = kLn2 * g1 * d - bandwidth * g * s.n;
    const double from_beta = 2.0 * g + v * g1 * g1 * g1;
    return 2.0 * v * g1 * g1 * from_omega + kLn2 * s.omega * s.n * from_beta;
}

struct Tap {
    int offset;
    double weight;
};

struct StencilDef {
    std::span<const Tap> taps;
    int reach;  // furthest offset, in units of h
};

// Richardson-combined (h, 2h) difference formulas.
constexpr std::array<Tap, 4> kCentral1{{{-2, 1.0 / 12}, {-1, -8.0 / 12}, {1, 8.0 / 12}, {2, -1.0 / 12}}};
constexpr std::array<Tap, 5> kCentral2{
    {{-2, -1.0 / 12}, {-1, 16.0 / 12}, {0, -30.0 / 12}, {1, 16.0 / 12}, {2, -1.0 / 12}}};
constexpr std::array<Tap, 3> kForward1{{{0, -1.5}, {1, 2.0}, {2, -0.5}}};
constexpr std::array<Tap, 4> kForward2{{{0, 1.75}, {1, -4.0}, {2, 2.5}, {4, -0.25}}};
constexpr std::array<Tap, 3> kBackward1{{{0, 1.5}, {-1, -2.0}, {-2, 0.5}}};
constexpr std::array<Tap, 4> kBackward2{{{0, 1.75}, {-1, -4.0}, {-2, 2.5}, {-4, -0.25}}};

StencilDef stencil_def(Stencil s, int order) {
    if (order != 1 && order != 2) throw DomainError("finite difference order must be 1 or 2");
    switch (s) {
        case Stencil::Central:
            return order == 1 ? StencilDef{kCentral1, 2} : StencilDef{kCentral2, 2};
        case Stencil::Forward:
            return order == 1 ? StencilDef{kForward1, 2} : StencilDef{kForward2, 4};
        case Stencil::Backward:
            return order == 1 ? StencilDef{kBackward1, 2} : StencilDef{kBackward2, 4};
    }
    return {kCentral1, 2};
}

}  // namespace

double delta_ul(double gamma, double bandwidth) {
    const double lc = kLn2 * capacity(gamma, bandwidth);
    const double g1 = 1.0 + gamma;
    const double g2 = gamma * gamma;
    const double cubic = (4 * lc - 3) * g2 * gamma + (11 * lc - 7) * g2 + lc * gamma + 2;
    return cubic / (g1 * g1);
}

SignedLog d_eps_ul_dn_scaled(const SystemConfig& cfg, double n_ul) {
    const LinkState s = ul_link(cfg, n_ul);
    return scaled_phi(s.x) * (ul_bracket(s, cfg.payload_bits, cfg.bandwidth) / xi_denominator(s));
}

double d_eps_ul_dn(const SystemConfig& cfg, double n_ul) {
    return d_eps_ul_dn_scaled(cfg, n_ul).to_double();
}

SignedLog d_eps_dl_dn_scaled(const SystemConfig& cfg, double n_ul) {
    const LinkState s = dl_link(cfg, n_ul);
    const double d = cfg.payload_bits;
    const double factor = s.beta * d / (s.n * s.n) + s.omega / (2.0 * s.beta * s.dispersion);
    return scaled_phi(s.x) * (-factor);
}

double d_eps_dl_dn(const SystemConfig& cfg, double n_ul) {
    return d_eps_dl_dn_scaled(cfg, n_ul).to_double();
}

SignedLog d_eps_cl_dn_scaled(const SystemConfig& cfg, double n_ul) {
    return d_eps_ul_dn_scaled(cfg, n_ul) + d_eps_dl_dn_scaled(cfg, n_ul);
}

double d_eps_cl_dn(const SystemConfig& cfg, double n_ul) {
    return d_eps_cl_dn_scaled(cfg, n_ul).to_double();
}

double closed_form_ul_derivative(const SystemConfig& cfg, double n_ul) {
    const LinkState s = ul_link(cfg, n_ul);
    const double xi = scaled_phi(s.x).to_double() / xi_denominator(s);
    const double eta = energy_snr_product(cfg);
    return xi * eta * (2 * kLn2 * s.omega + delta_ul(s.gamma, cfg.bandwidth));
}

double fd_step(double n) { return std::max(1e-4, 1e-3 * std::fabs(n)); }

Stencil stencil_within(double n, double lo, double hi, int order) {
    const double h = fd_step(n);
    if (n - 2 * h >= lo && n + 2 * h <= hi) return Stencil::Central;
    const double reach = (order == 2 ? 4 : 2) * h;
    if (n - 2 * h < lo && n + reach <= hi) return Stencil::Forward;
    if (n - reach >= lo) return Stencil::Backward;
    return Stencil::Central;
}

double fd_derivative(const std::function<double(double)>& f, double n, int order, Stencil stencil) {
    const StencilDef def = stencil_def(stencil, order);
    const double h = fd_step(n);
    double acc = 0.0;
    for (const Tap& t : def.taps) acc += t.weight * f(n + t.offset * h);
    return order == 1 ? acc / h : acc / (h * h);
}

SignedLog fd_derivative_log(const std::function<double(double)>& log_f, double n, int order,
                            Stencil stencil) {
    // Differencing exp(L) directly breaks down once L moves by more than a
    // few units per step, which it does deep in the tail. L itself is smooth,
    // so difference L and apply f' = f L', f'' = f (L'' + L'^2).
    const double l1 = fd_derivative(log_f, n, 1, stencil);
    const double factor = order == 1 ? l1 : fd_derivative(log_f, n, 2, stencil) + l1 * l1;
    return SignedLog::from_log(log_f(n)) * factor;
}

DerivativeBundle derivative_bundle(const SystemConfig& cfg, double n_ul) {
    DerivativeBundle b;
    b.n_ul = n_ul;
    const LinkState ul = ul_link(cfg, n_ul);
    const LinkState dl = dl_link(cfg, n_ul);
    b.phi_ul = scaled_phi(ul.x).to_double();
    b.phi_dl = scaled_phi(dl.x).to_double();
    b.xi = b.phi_ul / xi_denominator(ul);
    b.eta = energy_snr_product(cfg);
    const double m_ln2 = cfg.bits_per_symbol * kLn2;
    b.rho = m_ln2 * m_ln2 * n_ul;
    b.delta_ul = delta_ul(ul.gamma, cfg.bandwidth);

    const SignedLog g_ul = d_eps_ul_dn_scaled(cfg, n_ul);
    const SignedLog g_dl = d_eps_dl_dn_scaled(cfg, n_ul);
    b.d_eps_ul = g_ul.to_double();
    b.d_eps_dl = g_dl.to_double();
    b.d_eps_cl_scaled = g_ul + g_dl;
    b.d_eps_cl = b.d_eps_cl_scaled.to_double();

    const double lo = cfg.payload_bits;
    const double hi = cfg.max_blocklength - cfg.payload_bits;
    const Stencil st = stencil_within(n_ul, lo, hi, 2);
    b.d2_eps_cl_fd = fd_derivative([&](double n) { return loop_state(cfg, n).eps_cl; }, n_ul, 2, st);
    b.d2_eps_cl_scaled =
        fd_derivative_log([&](double n) { return log_eps_ul(cfg, n); }, n_ul, 2, st) +
        fd_derivative_log([&](double n) { return log_eps_dl(cfg, n); }, n_ul, 2, st);
    return b;
}

std::vector<double> domain_grid(const DomainBounds& domain, std::size_t points) {
    std::vector<double> grid;
    if (domain.empty || points == 0) return grid;
    grid.reserve(points);
    if (points == 1) {
        grid.push_back(domain.n_lo);
        return grid;
    }
    const double span = domain.n_hi - domain.n_lo;
    for (std::size_t i = 0; i < points; ++i) {
        grid.push_back(domain.n_lo + span * static_cast<double>(i) / static_cast<double>(points - 1));
    }
    grid.back() = domain.n_hi;
    return grid;
}

const char* to_string(ViolationKind k) {
    switch (k) {
        case ViolationKind::UlNotDecreasing: return "ul_not_decreasing";
        case ViolationKind::DlNotIncreasing: return "dl_not_increasing";
        case ViolationKind::ClNotConvex: return "cl_not_convex";
    }
    return "unknown";
}

std::size_t ConvexityScan::count(ViolationKind k) const {
    return static_cast<std::size_t>(std::count_if(violations.begin(), violations.end(),
                                                  [k](const ScanViolation& v) { return v.kind == k; }));
}

ConvexityScan convexity_scan(const SystemConfig& cfg, std::size_t grid_points) {
    ConvexityScan scan;
    scan.domain = feasible_domain(cfg);
    if (scan.domain.empty) {
        scan.infeasible = true;
        return scan;
    }
    const double lo = cfg.payload_bits;
    const double hi = cfg.max_blocklength - cfg.payload_bits;
    auto log_ul = [&](double n) { return log_eps_ul(cfg, n); };
    auto log_dl = [&](double n) { return log_eps_dl(cfg, n); };

    for (double n : domain_grid(scan.domain, grid_points)) {
        const LoopState ls = loop_state(cfg, n);
        GridSample g;
        g.n_ul = n;
        g.eps_ul = ls.ul.eps;
        g.eps_dl = ls.dl.eps;
        g.eps_cl = ls.eps_cl;
        g.log_eps_ul = ls.ul.log_eps;
        g.log_eps_dl = ls.dl.log_eps;
        const SignedLog slope = d_eps_cl_dn_scaled(cfg, n);
        g.d_eps_cl = slope.to_double();
        g.sign_d_eps_cl = slope.sign;

        const Stencil st1 = stencil_within(n, lo, hi, 1);
        g.d_eps_ul_fd = fd_derivative_log(log_ul, n, 1, st1).to_double();
        g.d_eps_dl_fd = fd_derivative_log(log_dl, n, 1, st1).to_double();
        const Stencil st2 = stencil_within(n, lo, hi, 2);
        const SignedLog curv = fd_derivative_log(log_ul, n, 2, st2) + fd_derivative_log(log_dl, n, 2, st2);
        g.d2_eps_cl = curv.to_double();
        g.sign_d2_eps_cl = curv.sign;

        if (!scan.samples.empty()) {
            const GridSample& prev = scan.samples.back();
            if (g.log_eps_ul > prev.log_eps_ul)
                scan.violations.push_back({ViolationKind::UlNotDecreasing, n, g.log_eps_ul - prev.log_eps_ul});
            if (!(g.log_eps_dl > prev.log_eps_dl))
                scan.violations.push_back({ViolationKind::DlNotIncreasing, n, g.log_eps_dl - prev.log_eps_dl});
        }
        if (g.sign_d2_eps_cl <= 0) scan.violations.push_back({ViolationKind::ClNotConvex, n, g.d2_eps_cl});
        scan.samples.push_back(g);
    }
    return scan;
}

}  // namespace clfbl
