#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "clfbl/experiments.hpp"
#include "clfbl/scenario.hpp"

namespace clfbl {

inline constexpr const char* kGridCsvHeader =
    "noise_w,n_ul,eps_ul,eps_dl,eps_cl,d_eps_cl_dn,sign_d_eps_cl_dn,d2_eps_cl_dn2";
inline constexpr const char* kSummaryCsvHeader =
    "noise_w,n_lo,n_hi,binding_hi,case,n_ul_opt,p_ul_w,eps_cl_opt,r_loop_opt,feasible";

/// %.17g, which round-trips every double.
std::string format_double(double v);

/// One row per grid sample, ordered by (noise_w, n_ul).
void write_grid_csv(std::ostream& os, const std::vector<SweepRecord>& records);

/// One row per noise value. Unsolved rows carry the status in `case` and
/// leave the optimum columns empty.
void write_summary_csv(std::ostream& os, const std::vector<SweepRecord>& records);

struct GridCsvRow {
    double noise_w;
    double n_ul;
    double eps_ul;
    double eps_dl;
    double eps_cl;
    double d_eps_cl_dn;
    int sign_d_eps_cl_dn;
    double d2_eps_cl_dn2;
};

/// Parses a grid CSV written by write_grid_csv. Throws std::runtime_error
/// on a header mismatch or a malformed row.
std::vector<GridCsvRow> read_grid_csv(std::istream& is);

nlohmann::ordered_json to_json(const DomainBounds& d);
nlohmann::ordered_json to_json(const SolveResult& r);
nlohmann::ordered_json to_json(const MonteCarloEstimate& e);

/// Human-readable multi-line summary of a solve.
std::string describe(const SolveResult& r);

}  // namespace clfbl
