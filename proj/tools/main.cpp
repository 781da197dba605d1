#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "clfbl/commands.hpp"
#include "clfbl/errors.hpp"
#include "clfbl/scenario.hpp"

namespace {

struct Common {
    std::string scenario_path;
    std::string preset;
    std::vector<std::string> overrides;
    std::string output_dir;
    std::size_t points = 0;
    std::size_t grid = 0;
    std::uint64_t trials = 0;
    std::int64_t seed = -1;
};

void add_common(CLI::App* cmd, Common& c) {
    auto* src = cmd->add_option("-s,--scenario", c.scenario_path, "Scenario key = value file");
    cmd->add_option("-p,--preset", c.preset, "Named preset (table1)")->excludes(src);
    cmd->add_option("--set", c.overrides, "Override a scenario key, e.g. --set N=2e-3")->allow_extra_args(false);
    cmd->add_option("-o,--out", c.output_dir, "Output directory for CSV files");
    cmd->add_option("--points", c.points, "Grid resolution (noise points for sweep, n_UL points for case-study)");
    cmd->add_option("--grid", c.grid, "n_UL points per noise value (sweep, validate)");
    cmd->add_option("--trials", c.trials, "Monte Carlo trials (validate)");
    cmd->add_option("--seed", c.seed, "Monte Carlo seed (validate)");
}

clfbl::Scenario build_scenario(const Common& c, bool sweep) {
    clfbl::Scenario sc;
    if (!c.scenario_path.empty()) {
        sc = clfbl::load_scenario(c.scenario_path);
    } else if (!c.preset.empty()) {
        sc = clfbl::preset_scenario(c.preset);
    } else {
        throw clfbl::ScenarioError("one of --scenario or --preset is required");
    }
    for (const std::string& kv : c.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw clfbl::ScenarioError("--set expects key=value, got '" + kv + "'");
        clfbl::apply_override(sc, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (!c.output_dir.empty()) sc.run.output_dir = c.output_dir;
    if (c.points) (sweep ? sc.run.sweep_points : sc.run.case_study_points) = c.points;
    if (c.grid) sc.run.scan_points = c.grid;
    if (c.trials) sc.run.mc_trials = c.trials;
    if (c.seed >= 0) sc.run.seed = static_cast<std::uint64_t>(c.seed);
    return sc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Closed-loop finite-blocklength reliability: UL/DL blocklength allocation under time and energy budgets"};
    app.require_subcommand(1);

    Common common;
    clfbl::cli::CommandOptions opts;

    auto* solve = app.add_subcommand("solve", "Reliability-optimal UL blocklength for one noise power");
    add_common(solve, common);
    solve->add_flag("--allow-high-noise", opts.allow_high_noise, "Accept N >= p_DL");

    auto* case_study = app.add_subcommand("case-study", "Dense eps_CL grid at one noise power (CSV)");
    add_common(case_study, common);

    auto* sweep = app.add_subcommand("sweep", "Noise-power sweep with per-point scans (CSV)");
    add_common(sweep, common);

    auto* validate = app.add_subcommand("validate", "Run the oracle suites on one scenario");
    add_common(validate, common);
    validate->add_option("--test-corrupt-derivative", opts.corrupt_derivative_scale,
                         "Negative control: scale analytic derivatives by this factor")
        ->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : clfbl::cli::kExitUsage;
    }

    try {
        if (solve->parsed()) return clfbl::cli::cmd_solve(build_scenario(common, false), opts, std::cout, std::cerr);
        if (case_study->parsed())
            return clfbl::cli::cmd_case_study(build_scenario(common, false), std::cout, std::cerr);
        if (sweep->parsed()) return clfbl::cli::cmd_sweep(build_scenario(common, true), std::cout, std::cerr);
        if (validate->parsed())
            return clfbl::cli::cmd_validate(build_scenario(common, false), opts, std::cout, std::cerr);
    } catch (const clfbl::ScenarioError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return clfbl::cli::kExitUsage;
    } catch (const clfbl::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return clfbl::cli::kExitUsage;
    } catch (const clfbl::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return clfbl::cli::kExitUsage;
    }
    return clfbl::cli::kExitUsage;
}
