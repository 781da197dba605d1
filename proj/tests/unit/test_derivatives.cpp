#include <doctest.h>

#include <cmath>

#include "clfbl/derivatives.hpp"
#include "clfbl/errors.hpp"

using namespace clfbl;

TEST_CASE("delta_UL at unit SNR") {
    const double ln2 = std::log(2.0);
    CHECK(std::fabs(delta_ul(1.0) - (16 * ln2 - 8) / 4) <= 1e-12);
}

// Reference derivatives: mpmath numerical differentiation at 50 digits.
TEST_CASE("UL derivative at the table1 point") {
    SystemConfig c;
    CHECK(d_eps_ul_dn(c, 20) == doctest::Approx(-1.1350098839016864e-7).epsilon(1e-9));
    CHECK(d_eps_ul_dn(c, 30) == doctest::Approx(-1.5286360694831504e-8).epsilon(1e-9));
    // eps_UL turns upward just below eta.
    CHECK(d_eps_ul_dn(c, 54) == doctest::Approx(7.7203552927739672e-10).epsilon(1e-8));
    CHECK(d_eps_ul_dn(c, 54) > 0);
    CHECK(d_eps_ul_dn_scaled(c, 20).to_double() == doctest::Approx(d_eps_ul_dn(c, 20)).epsilon(1e-14));
}

TEST_CASE("expanded closed form disagrees with the derivative") {
    SystemConfig c;
    const double fd = fd_derivative([&](double n) { return loop_state(c, n).ul.eps; }, 20, 1);
    CHECK(fd == doctest::Approx(d_eps_ul_dn(c, 20)).epsilon(1e-8));
    CHECK(std::fabs(closed_form_ul_derivative(c, 20) - fd) > 0.5 * std::fabs(fd));
}

TEST_CASE("DL derivative against a reference") {
    SystemConfig c;
    c.noise_power = 9.9e-3;
    c.max_blocklength = 100;
    c.energy_budget = 40 * 9.9e-3 * 1.2 / 250e3;
    CHECK(d_eps_dl_dn(c, 40) == doctest::Approx(1.0402466751137196e-8).epsilon(1e-9));
    CHECK(d_eps_dl_dn(c, 40) > 0);
    CHECK(d_eps_cl_dn(c, 40) == doctest::Approx(d_eps_ul_dn(c, 40) + d_eps_dl_dn(c, 40)));
}

TEST_CASE("finite differences on polynomials") {
    auto cubic = [](double x) { return x * x * x - 2 * x; };
    CHECK(fd_derivative(cubic, 3, 1) == doctest::Approx(25).epsilon(1e-10));
    CHECK(fd_derivative(cubic, 3, 2) == doctest::Approx(18).epsilon(1e-7));
    // One-sided first differences are second order: error 2 h^2 for this cubic.
    CHECK(fd_derivative(cubic, 3, 1, Stencil::Forward) == doctest::Approx(25).epsilon(1e-6));
    CHECK(fd_derivative(cubic, 3, 1, Stencil::Backward) == doctest::Approx(25).epsilon(1e-6));
    CHECK(fd_derivative(cubic, 3, 2, Stencil::Forward) == doctest::Approx(18).epsilon(1e-5));
    CHECK(fd_derivative(cubic, 3, 2, Stencil::Backward) == doctest::Approx(18).epsilon(1e-5));
    CHECK_THROWS_AS(fd_derivative(cubic, 3, 3), DomainError);
}

TEST_CASE("log-domain differences keep relative accuracy under underflow") {
    // f = exp(-3000 + 2 n): f' / f = 2, f'' / f = 4 for any offset.
    auto log_f = [](double n) { return -3000 + 2 * n; };
    const SignedLog d1 = fd_derivative_log(log_f, 10, 1);
    const SignedLog d2 = fd_derivative_log(log_f, 10, 2);
    CHECK(d1.sign == 1);
    CHECK(d1.log_abs - log_f(10) == doctest::Approx(std::log(2.0)).epsilon(1e-8));
    CHECK(d2.sign == 1);
    CHECK(d2.log_abs - log_f(10) == doctest::Approx(std::log(4.0)).epsilon(1e-6));
}

TEST_CASE("stencil selection stays in range") {
    CHECK(stencil_within(50, 9, 100, 1) == Stencil::Central);
    CHECK(stencil_within(9, 9, 100, 2) == Stencil::Forward);
    CHECK(stencil_within(100, 9, 100, 2) == Stencil::Backward);
    CHECK(fd_step(0.01) == 1e-4);
    CHECK(fd_step(1) == 1e-3);
    CHECK(fd_step(1000) == doctest::Approx(1.0));
}

TEST_CASE("derivative bundle fields agree") {
    SystemConfig c;
    const DerivativeBundle b = derivative_bundle(c, 30);
    CHECK(b.eta == doctest::Approx(energy_snr_product(c)));
    CHECK(b.d_eps_ul == doctest::Approx(d_eps_ul_dn(c, 30)));
    CHECK(b.d_eps_cl == doctest::Approx(b.d_eps_ul + b.d_eps_dl));
    CHECK(b.d_eps_cl_scaled.to_double() == doctest::Approx(b.d_eps_cl).epsilon(1e-12));
    CHECK(b.d2_eps_cl_scaled.sign == 1);
    CHECK(b.rho == doctest::Approx(std::pow(std::log(2.0), 2) * 30));
    CHECK(b.delta_ul == doctest::Approx(delta_ul(b.eta / 30)));
}

TEST_CASE("domain grid endpoints") {
    DomainBounds d{9, 54.5, 54.5, UpperBound::Snr, false};
    const auto g = domain_grid(d, 10);
    REQUIRE(g.size() == 10);
    CHECK(g.front() == 9);
    CHECK(g.back() == 54.5);
    const auto one = domain_grid(d, 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == 9);
}

TEST_CASE("convexity scan on the table1 point") {
    const ConvexityScan s = convexity_scan(SystemConfig{}, 200);
    CHECK_FALSE(s.infeasible);
    CHECK(s.samples.size() == 200);
    CHECK(s.count(ViolationKind::ClNotConvex) == 0);
    CHECK(s.count(ViolationKind::DlNotIncreasing) == 0);
    // eps_UL rises near eta (gamma_UL close to 1); the scan must report it.
    CHECK(s.count(ViolationKind::UlNotDecreasing) > 0);
    CHECK(s.convex_and_dl_increasing());
    for (const auto& v : s.violations) CHECK(v.n_ul > 45);
}

TEST_CASE("convexity scan on an empty domain") {
    SystemConfig c;
    c.noise_power = 0.02;
    const ConvexityScan s = convexity_scan(c, 50);
    CHECK(s.infeasible);
    CHECK(s.samples.empty());
}

TEST_CASE("curvature deep in the tail matches a high-precision reference") {
    // eps_CL'' / eps_CL from 80-digit mpmath differentiation, N = 1 uW.
    SystemConfig c;
    c.noise_power = 1e-6;
    struct Ref {
        double n, ratio;
    };
    for (const Ref r : {Ref{2479.52, 1798.2082}, Ref{1000, 62.891705}, Ref{158.729, 293.78116}}) {
        const DerivativeBundle b = derivative_bundle(c, r.n);
        REQUIRE(b.d2_eps_cl_scaled.sign == 1);
        const double log_ratio = b.d2_eps_cl_scaled.log_abs - loop_state(c, r.n).log_eps_cl;
        CHECK(std::exp(log_ratio) == doctest::Approx(r.ratio).epsilon(1e-5));
    }
}
