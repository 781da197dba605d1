#pragma once

#include <optional>

namespace clfbl {

/// Exogenous scenario parameters. Units: bits, symbols/s, Hz, seconds,
/// joules, watts.
struct SystemConfig {
    double payload_bits = 8;         // d, identical in UL and DL
    double sample_rate = 250e3;      // f_s
    double bits_per_symbol = 1;      // M
    double bandwidth = 1;            // B (normalized)
    double max_blocklength = 2500;   // n_max = f_s * M * T
    std::optional<double> frame_length;  // T, cross-checked against n_max
    double energy_budget = 0.65e-6;  // E, per UL transmission
    double dl_power = 10e-3;         // p_DL
    double noise_power = 3e-3;       // N
    double ul_gain = 1;              // |h_UL|^2
    double dl_gain = 1;              // |h_DL|^2
    double max_error = 1e-5;         // eps_max, per direction

    /// Throws ConfigError naming every violated constraint.
    void validate() const;

    SystemConfig with_noise(double noise) const {
        SystemConfig c = *this;
        c.noise_power = noise;
        return c;
    }
};

/// Per-direction channel and code quantities at one blocklength.
struct LinkState {
    double n = 0;           // blocklength, bits
    double p = 0;           // transmit power, W
    double gamma = 0;       // SNR
    double capacity = 0;    // B log2(1 + gamma)
    double dispersion = 0;  // 1 - (1 + gamma)^-2
    double omega = 0;       // capacity - d / n
    double beta = 0;        // sqrt(n / V)
    double x = 0;           // (ln 2) omega beta
    double eps = 0;         // Q(x)
    double log_eps = 0;     // log Q(x), finite even where eps underflows
};

/// Standard normal tail 0.5 erfc(x / sqrt 2). Saturates to 0 below the double range.
double q_function(double x);

/// log Q(x), accurate for arbitrarily large x (continued-fraction tail).
double log_q_function(double x);

double snr(double power, double gain, double noise);
double capacity(double gamma, double bandwidth = 1.0);
double dispersion(double gamma);

/// Normal-approximation decoding argument (ln 2)(C - d/n) sqrt(n/V).
double decoding_argument(double n, double gamma, double payload_bits, double bandwidth = 1.0);

/// Message error rate of a length-n code carrying d bits at SNR gamma.
double fbl_error_rate(double n, double gamma, double payload_bits, double bandwidth = 1.0);

/// Same as fbl_error_rate, in the log domain.
double log_fbl_error_rate(double n, double gamma, double payload_bits, double bandwidth = 1.0);

LinkState link_state(double n, double power, double gain, double noise, double payload_bits,
                     double bandwidth = 1.0);

/// Exact closed-loop success probability (1 - eps_ul)(1 - eps_dl).
double loop_reliability(double eps_ul, double eps_dl);

/// First-order closed-loop error eps_ul + eps_dl; an objective, not a probability.
double loop_error_approx(double eps_ul, double eps_dl);

}  // namespace clfbl
