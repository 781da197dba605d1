#pragma once

#include "clfbl/fbl_model.hpp"

namespace clfbl {

/// Smallest UL blocklength for which convexity of the UL error rate is
/// guaranteed ((M ln 2)^2 n > 4 needs n >= 9 at M = 1).
inline constexpr double kMinConvexBlocklength = 9.0;

enum class UpperBound { Snr, Blocklength };

const char* to_string(UpperBound b);

/// Feasible, provably-convex interval of the UL blocklength.
struct DomainBounds {
    double n_lo = 0;   // max(9, d)
    double n_hi = 0;   // min(eta, n_max - d)
    double eta = 0;    // gamma_UL * n_UL = E M f_s g_UL / N
    UpperBound binding_hi = UpperBound::Snr;
    bool empty = false;
};

/// eta = E M f_s g_UL / N, the constant product gamma_UL * n_UL when the
/// whole energy budget is spent.
double energy_snr_product(const SystemConfig& cfg);

double ul_snr_of_blocklength(const SystemConfig& cfg, double n_ul);

/// UL power that spends exactly E over n_ul bits: E M f_s / n_ul.
double ul_power_of_blocklength(const SystemConfig& cfg, double n_ul);

DomainBounds feasible_domain(const SystemConfig& cfg);

/// Both link states at a UL blocklength, with the DL taking the remainder
/// n_max - n_ul of the frame.
struct LoopState {
    LinkState ul;
    LinkState dl;
    double eps_cl = 0;      // eps_ul + eps_dl
    double log_eps_cl = 0;  // log(eps_ul + eps_dl) without underflow
};

LoopState loop_state(const SystemConfig& cfg, double n_ul);

double log_eps_ul(const SystemConfig& cfg, double n_ul);
double log_eps_dl(const SystemConfig& cfg, double n_ul);

}  // namespace clfbl
