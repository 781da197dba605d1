#include "clfbl/commands.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <system_error>

#include "clfbl/experiments.hpp"
#include "clfbl/report.hpp"
#include "clfbl/validate.hpp"

namespace clfbl::cli {

namespace fs = std::filesystem;

namespace {

// Opens <dir>/<name> for writing, creating dir. Sets ok = false and reports
// the path on failure.
std::ofstream open_output(const std::string& dir, const std::string& name, std::ostream& err, bool& ok) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    const fs::path path = fs::path(dir) / name;
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        err << "error: cannot write '" << path.string() << "'\n";
        ok = false;
    }
    return f;
}

bool write_records(const std::string& dir, const std::string& stem, const std::vector<SweepRecord>& recs,
                   std::ostream& out, std::ostream& err) {
    bool ok = true;
    {
        auto f = open_output(dir, stem + "_grid.csv", err, ok);
        if (!ok) return false;
        write_grid_csv(f, recs);
        if (!f) {
            err << "error: write failed for '" << (fs::path(dir) / (stem + "_grid.csv")).string() << "'\n";
            return false;
        }
    }
    {
        auto f = open_output(dir, stem + "_summary.csv", err, ok);
        if (!ok) return false;
        write_summary_csv(f, recs);
        if (!f) {
            err << "error: write failed for '" << (fs::path(dir) / (stem + "_summary.csv")).string() << "'\n";
            return false;
        }
    }
    out << "wrote " << (fs::path(dir) / (stem + "_grid.csv")).string() << " and "
        << (fs::path(dir) / (stem + "_summary.csv")).string() << '\n';
    return true;
}

}  // namespace

int cmd_solve(const Scenario& sc, const CommandOptions& opts, std::ostream& out, std::ostream& err) {
    if (!sc.has_noise) {
        err << "error: solve needs a single noise power N\n";
        return kExitUsage;
    }
    if (sc.config.noise_power >= sc.config.dl_power && !opts.allow_high_noise) {
        err << "error: N >= p_DL; pass --allow-high-noise to solve anyway\n";
        return kExitUsage;
    }
    const SolveResult r = solve(sc.config);
    out << to_json(r).dump(2) << '\n';
    err << describe(r);
    return r.solved() && r.feasible ? kExitOk : kExitInfeasible;
}

int cmd_case_study(const Scenario& sc, std::ostream& out, std::ostream& err) {
    if (!sc.has_noise) {
        err << "error: case-study needs a single noise power N\n";
        return kExitUsage;
    }
    const std::vector<SweepRecord> recs{run_case_study(sc.config, sc.run.case_study_points)};
    return write_records(sc.run.output_dir, "case_study", recs, out, err) ? kExitOk : kExitIo;
}

int cmd_sweep(const Scenario& sc, std::ostream& out, std::ostream& err) {
    const double lo = sc.run.noise_min.value_or(sc.config.dl_power * 1e-4);
    const double hi = sc.run.noise_max.value_or(sc.config.dl_power * (1 - 1e-3));
    if (sc.run.sweep_points < 2) {
        err << "error: sweep needs at least 2 noise points\n";
        return kExitUsage;
    }
    const auto noises = noise_grid(lo, hi, sc.run.sweep_points);
    const auto recs = sweep_noise(sc.config, noises, sc.run.scan_points);
    if (!write_records(sc.run.output_dir, "sweep", recs, out, err)) return kExitIo;

    nlohmann::ordered_json meta;
    meta["scenario_hash"] = scenario_hash(sc);
    meta["scenario"] = canonical_text(sc);
    meta["noise_grid"] = {{"spacing", "log"}, {"min_w", lo}, {"max_w", hi}, {"points", sc.run.sweep_points}};
    meta["n_ul_grid"] = {{"spacing", "uniform"}, {"points", sc.run.scan_points}};
    meta["monte_carlo_generator"] = kMonteCarloGenerator;
    bool ok = true;
    auto f = open_output(sc.run.output_dir, "sweep_meta.json", err, ok);
    if (!ok) return kExitIo;
    f << meta.dump(2) << '\n';
    return f ? kExitOk : kExitIo;
}

int cmd_validate(const Scenario& sc, const CommandOptions& opts, std::ostream& out, std::ostream& err) {
    ValidateOptions vo;
    vo.grid_points = sc.run.scan_points;
    vo.mc_trials = sc.run.mc_trials;
    vo.seed = sc.run.seed;
    vo.analytic_derivative_scale = opts.corrupt_derivative_scale;
    if (!sc.has_noise) {
        err << "error: validate needs a single noise power N\n";
        return kExitUsage;
    }
    bool failed = false;
    for (const SuiteResult& s : run_validation(sc.config, vo)) {
        out << to_string(s.outcome) << "  " << s.name << "  worst=" << format_double(s.worst_residual) << "  "
            << s.detail << '\n';
        failed |= s.outcome == SuiteOutcome::Fail;
    }
    return failed ? kExitValidationFailed : kExitOk;
}

}  // namespace clfbl::cli
