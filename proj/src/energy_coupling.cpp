#include "clfbl/energy_coupling.hpp"

#include <algorithm>
#include <cmath>

#include "clfbl/errors.hpp"
#include "clfbl/signed_log.hpp"

namespace clfbl {

const char* to_string(UpperBound b) {
    return b == UpperBound::Snr ? "SNR_BOUND" : "BLOCKLENGTH_BOUND";
}

double energy_snr_product(const SystemConfig& cfg) {
    return cfg.energy_budget * cfg.bits_per_symbol * cfg.sample_rate * cfg.ul_gain /
           cfg.noise_power;
}

double ul_snr_of_blocklength(const SystemConfig& cfg, double n_ul) {
    if (!(n_ul > 0)) throw DomainError("UL blocklength must be > 0");
    return energy_snr_product(cfg) / n_ul;
}

double ul_power_of_blocklength(const SystemConfig& cfg, double n_ul) {
    if (!(n_ul > 0)) throw DomainError("UL blocklength must be > 0");
    return cfg.energy_budget * cfg.bits_per_symbol * cfg.sample_rate / n_ul;
}

DomainBounds feasible_domain(const SystemConfig& cfg) {
    DomainBounds b;
    b.eta = energy_snr_product(cfg);
    b.n_lo = std::max(kMinConvexBlocklength, cfg.payload_bits);
    const double by_blocklength = cfg.max_blocklength - cfg.payload_bits;
    if (b.eta <= by_blocklength) {
        b.n_hi = b.eta;
        b.binding_hi = UpperBound::Snr;
    } else {
        b.n_hi = by_blocklength;
        b.binding_hi = UpperBound::Blocklength;
    }
    b.empty = b.n_lo > b.n_hi;
    return b;
}

LoopState loop_state(const SystemConfig& cfg, double n_ul) {
    LoopState s;
    s.ul = link_state(n_ul, ul_power_of_blocklength(cfg, n_ul), cfg.ul_gain, cfg.noise_power,
                      cfg.payload_bits, cfg.bandwidth);
    s.dl = link_state(cfg.max_blocklength - n_ul, cfg.dl_power, cfg.dl_gain, cfg.noise_power,
                      cfg.payload_bits, cfg.bandwidth);
    s.eps_cl = s.ul.eps + s.dl.eps;
    s.log_eps_cl =
        (SignedLog::from_log(s.ul.log_eps) + SignedLog::from_log(s.dl.log_eps)).log_abs;
    return s;
}

double log_eps_ul(const SystemConfig& cfg, double n_ul) {
    return link_state(n_ul, ul_power_of_blocklength(cfg, n_ul), cfg.ul_gain, cfg.noise_power,
                      cfg.payload_bits, cfg.bandwidth)
        .log_eps;
}

double log_eps_dl(const SystemConfig& cfg, double n_ul) {
    return link_state(cfg.max_blocklength - n_ul, cfg.dl_power, cfg.dl_gain, cfg.noise_power,
                      cfg.payload_bits, cfg.bandwidth)
        .log_eps;
}

}  // namespace clfbl
