#include "clfbl/report.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace clfbl {

std::string format_double(double v) {
    char buf[40];
    if (v == 0) v = 0;  // no "-0" in output
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_grid_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
    os << kGridCsvHeader << '\n';
    for (const SweepRecord& rec : records) {
        const std::string noise = format_double(rec.noise);
        for (const GridSample& g : rec.grid()) {
            os << noise << ',' << format_double(g.n_ul) << ',' << format_double(g.eps_ul) << ','
               << format_double(g.eps_dl) << ',' << format_double(g.eps_cl) << ',' << format_double(g.d_eps_cl)
               << ',' << g.sign_d_eps_cl << ',' << format_double(g.d2_eps_cl) << '\n';
        }
    }
}

void write_summary_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
    os << kSummaryCsvHeader << '\n';
    for (const SweepRecord& rec : records) {
        const SolveResult& r = rec.result;
        os << format_double(rec.noise) << ',' << format_double(rec.domain.n_lo) << ','
           << format_double(rec.domain.n_hi) << ',' << to_string(rec.domain.binding_hi) << ',';
        if (!r.solved()) {
            os << to_string(r.status) << ",,,,,false\n";
            continue;
        }
        os << to_string(r.optimum_case) << ',' << r.n_ul << ',' << format_double(r.p_ul) << ','
           << format_double(r.eps_cl) << ',' << format_double(r.r_loop) << ',' << (r.feasible ? "true" : "false")
           << '\n';
    }
}

std::vector<GridCsvRow> read_grid_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != kGridCsvHeader) throw std::runtime_error("grid csv: unexpected header");
    std::vector<GridCsvRow> rows;
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        GridCsvRow r{};
        const int n = std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf,%d,%lf", &r.noise_w, &r.n_ul, &r.eps_ul,
                                  &r.eps_dl, &r.eps_cl, &r.d_eps_cl_dn, &r.sign_d_eps_cl_dn, &r.d2_eps_cl_dn2);
        if (n != 8) throw std::runtime_error("grid csv: malformed row " + std::to_string(line_no));
        rows.push_back(r);
    }
    return rows;
}

nlohmann::ordered_json to_json(const DomainBounds& d) {
    return {{"n_lo", d.n_lo}, {"n_hi", d.n_hi}, {"eta", d.eta}, {"binding_hi", to_string(d.binding_hi)},
            {"empty", d.empty}};
}

nlohmann::ordered_json to_json(const SolveResult& r) {
    nlohmann::ordered_json j;
    j["status"] = to_string(r.status);
    if (r.solved()) {
        j["n_ul"] = r.n_ul;
        j["n_dl"] = r.n_dl;
        j["p_ul"] = r.p_ul;
        j["eps_ul"] = r.eps_ul;
        j["eps_dl"] = r.eps_dl;
        j["eps_cl"] = r.eps_cl;
        j["r_loop"] = r.r_loop;
        j["case"] = to_string(r.optimum_case);
        j["feasible"] = r.feasible;
        j["n_ul_cont"] = r.n_ul_cont;
        j["iterations"] = r.iterations;
    } else {
        j["feasible"] = false;
    }
    j["domain"] = to_json(r.domain);
    j["diagnostics"] = r.diagnostics;
    return j;
}

nlohmann::ordered_json to_json(const MonteCarloEstimate& e) {
    return {{"trials", e.trials}, {"successes", e.successes}, {"r_loop", e.r_loop}, {"ci99_lo", e.ci_lo},
            {"ci99_hi", e.ci_hi}, {"eps_ul", e.eps_ul}, {"eps_dl", e.eps_dl}, {"seed", e.seed},
            {"generator", e.generator}};
}

std::string describe(const SolveResult& r) {
    std::ostringstream os;
    os << "domain   n_UL in [" << r.domain.n_lo << ", " << r.domain.n_hi << "] (upper: "
       << to_string(r.domain.binding_hi) << ", eta = " << r.domain.eta << ")\n";
    if (!r.solved()) {
        os << "status   " << to_string(r.status) << '\n';
        for (const auto& d : r.diagnostics) os << "         " << d << '\n';
        return os.str();
    }
    os << "optimum  n_UL = " << r.n_ul << ", n_DL = " << r.n_dl << " (" << to_string(r.optimum_case)
       << ", continuous " << format_double(r.n_ul_cont) << ")\n"
       << "power    p_UL = " << r.p_ul << " W\n"
       << "errors   eps_UL = " << r.eps_ul << ", eps_DL = " << r.eps_dl << ", eps_CL = " << r.eps_cl << '\n'
       << "loop     R_loop = " << format_double(r.r_loop) << '\n'
       << "feasible " << (r.feasible ? "yes" : "no") << '\n';
    for (const auto& d : r.diagnostics) os << "         " << d << '\n';
    return os.str();
}

}  // namespace clfbl
