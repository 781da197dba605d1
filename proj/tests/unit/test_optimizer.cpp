#include <doctest.h>

#include <cmath>
#include <random>

#include "clfbl/experiments.hpp"
#include "clfbl/optimizer.hpp"

using namespace clfbl;

TEST_CASE("solve at the table1 point") {
    const SolveResult r = solve(SystemConfig{});
    REQUIRE(r.solved());
    CHECK(r.optimum_case == OptimumCase::InteriorRoot);
    CHECK(r.n_ul == 49);
    CHECK(r.n_dl == 2451);
    CHECK(r.n_ul_cont > 49);
    CHECK(r.n_ul_cont < 50);
    CHECK(r.p_ul == doctest::Approx(ul_power_of_blocklength(SystemConfig{}, 49)));
    CHECK(r.eps_ul == doctest::Approx(2.5551121677310004e-7).epsilon(1e-10));
    CHECK(r.r_loop == doctest::Approx((1 - r.eps_ul) * (1 - r.eps_dl)));
    CHECK(r.feasible);
    CHECK(r.diagnostics.empty());
    CHECK(grid_search_oracle(SystemConfig{}) == r.n_ul);
}

TEST_CASE("interior root brackets a sign change") {
    SystemConfig c;
    const auto opt = optimize_continuous(c);
    REQUIRE(opt);
    CHECK(d_eps_cl_dn_scaled(c, opt->n_ul - 1e-3).sign < 0);
    CHECK(d_eps_cl_dn_scaled(c, opt->n_ul + 1e-3).sign > 0);
}

TEST_CASE("left boundary when eps_CL only rises") {
    // Short frame, weak DL, plenty of UL energy: eps_CL is all DL error,
    // which grows with every symbol the UL takes.
    SystemConfig c;
    c.noise_power = 1e-5;
    c.max_blocklength = 60;
    c.dl_power = 3e-6;
    const auto opt = optimize_continuous(c);
    REQUIRE(opt);
    CHECK(opt->optimum_case == OptimumCase::LeftBoundary);
    CHECK(opt->n_ul == feasible_domain(c).n_lo);
    CHECK(solve(c).n_ul == grid_search_oracle(c));
}

TEST_CASE("right boundary when eps_CL only falls") {
    // Strong DL and a short frame: the blocklength bound binds while the UL
    // SNR is still high, so eps_UL falls all the way to n_hi.
    SystemConfig c;
    c.noise_power = 8.125e-4;
    c.dl_power = 10;
    c.max_blocklength = 60;
    const auto opt = optimize_continuous(c);
    REQUIRE(opt);
    CHECK(feasible_domain(c).binding_hi == UpperBound::Blocklength);
    CHECK(opt->optimum_case == OptimumCase::RightBoundary);
    CHECK(opt->n_ul == feasible_domain(c).n_hi);
    CHECK(solve(c).n_ul == grid_search_oracle(c));
}

TEST_CASE("empty domains are reported, not thrown") {
    SystemConfig c;
    c.noise_power = 0.02;
    CHECK_FALSE(optimize_continuous(c));
    const SolveResult r = solve(c);
    CHECK(r.status == SolveStatus::EmptyDomain);
    CHECK_FALSE(r.feasible);
    REQUIRE_FALSE(r.diagnostics.empty());
    CHECK(r.diagnostics[0].find("empty domain") != std::string::npos);
    CHECK_FALSE(grid_search_oracle(c));
}

TEST_CASE("domain without integers") {
    // eta = 9.5 and d = 9.2: the interval [9.2, 9.5] holds no integer.
    SystemConfig c;
    c.payload_bits = 9.2;
    c.noise_power = 0.65e-6 * 250e3 / 9.5;
    const SolveResult r = solve(c);
    CHECK(r.status == SolveStatus::EmptyIntegerRange);
    CHECK_FALSE(refine_integer(c, 9.3));
}

TEST_CASE("refine_integer matches exhaustive search on random configs") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0, 1);
    int checked = 0;
    for (int i = 0; i < 200 && checked < 40; ++i) {
        SystemConfig c;
        c.energy_budget = std::pow(10.0, -7 + 2 * u(rng));
        c.noise_power = std::pow(10.0, -4 + 2 * u(rng));
        c.dl_power = std::pow(10.0, -4 + 3 * u(rng));
        c.payload_bits = 8 + std::floor(56 * u(rng));
        c.max_blocklength = 500 + std::floor(4500 * u(rng));
        const auto oracle = grid_search_oracle(c);
        if (!oracle) continue;
        const SolveResult r = solve(c);
        REQUIRE(r.solved());
        if (r.n_ul != *oracle) {
            // A different integer is acceptable only as an exact tie.
            CHECK(loop_state(c, r.n_ul).log_eps_cl == loop_state(c, *oracle).log_eps_cl);
        }
        ++checked;
    }
    CHECK(checked == 40);
}

TEST_CASE("feasibility boundary is inclusive and names the direction") {
    SolveResult r = solve(SystemConfig{});
    SystemConfig c;
    c.max_error = r.eps_ul;
    FeasibilityReport rep = check_feasibility(r, c);
    CHECK(rep.feasible);

    c.max_error = r.eps_ul * 0.5;
    r.diagnostics.clear();
    rep = check_feasibility(r, c);
    CHECK_FALSE(rep.feasible);
    CHECK(rep.ul_violated);
    CHECK_FALSE(rep.dl_violated);
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].find("UL") != std::string::npos);
    CHECK_FALSE(r.feasible);
}
