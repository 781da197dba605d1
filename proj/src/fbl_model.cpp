#include "clfbl/fbl_model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "clfbl/errors.hpp"

namespace clfbl {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kSqrt2 = std::numbers::sqrt2;
// log(sqrt(2 pi))
constexpr double kLogSqrt2Pi = 0.91893853320467274178;

// Beyond this point log(erfc) loses relative accuracy as erfc approaches
// the subnormal range; switch to the Mills-ratio continued fraction.
constexpr double kTailSwitch = 20.0;

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw DomainError(std::string(what) + ": non-finite argument");
}

// Mills ratio R(x) = Q(x) / pdf(x) = 1/(x + 1/(x + 2/(x + 3/(x + ...)))),
// evaluated with the modified Lentz algorithm. Converges fast for x >= 5.
double mills_ratio(double x) {
    constexpr double tiny = 1e-300;
    double f = x;
    double c = x;
    double d = 0.0;
    for (int k = 1; k < 500; ++k) {
        d = x + k * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = x + k / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return 1.0 / f;
}

}  // namespace

void SystemConfig::validate() const {
    std::vector<std::string> problems;
    auto need = [&](bool ok, const char* msg) {
        if (!ok) problems.emplace_back(msg);
    };
    need(std::isfinite(payload_bits) && payload_bits >= 1, "d must be >= 1");
    need(std::isfinite(max_blocklength) && max_blocklength >= 2 * payload_bits,
         "n_max must be >= 2 d");
    need(energy_budget > 0 && std::isfinite(energy_budget), "E must be > 0");
    need(dl_power > 0 && std::isfinite(dl_power), "p_DL must be > 0");
    need(noise_power > 0 && std::isfinite(noise_power), "N must be > 0");
    need(ul_gain > 0 && std::isfinite(ul_gain), "g_UL must be > 0");
    need(dl_gain > 0 && std::isfinite(dl_gain), "g_DL must be > 0");
    need(sample_rate > 0 && std::isfinite(sample_rate), "f_s must be > 0");
    need(bits_per_symbol >= 1 && std::isfinite(bits_per_symbol), "M must be >= 1");
    need(bandwidth > 0 && std::isfinite(bandwidth), "B must be > 0");
    need(max_error > 0 && max_error < 1, "eps_max must lie in (0, 1)");
    if (frame_length) {
        const double implied = sample_rate * bits_per_symbol * *frame_length;
        need(std::fabs(max_blocklength - implied) <= 1e-9 * max_blocklength,
             "n_max inconsistent with f_s * M * T");
    }
    if (!problems.empty()) {
        std::ostringstream os;
        os << "invalid system config:";
        for (const auto& p : problems) os << " [" << p << "]";
        throw ConfigError(os.str());
    }
}

double q_function(double x) {
    require_finite(x, "q_function");
    return 0.5 * std::erfc(x / kSqrt2);
}

double log_q_function(double x) {
    require_finite(x, "log_q_function");
    if (x > kTailSwitch) return -0.5 * x * x - kLogSqrt2Pi + std::log(mills_ratio(x));
    if (x < -1.0) return std::log1p(-q_function(-x));
    return std::log(q_function(x));
}

double snr(double power, double gain, double noise) {
    if (!(noise > 0)) throw DomainError("snr: noise power must be > 0");
    if (!(power >= 0)) throw DomainError("snr: power must be >= 0");
    if (!(gain > 0)) throw DomainError("snr: gain must be > 0");
    return power * gain / noise;
}

double capacity(double gamma, double bandwidth) {
    if (!(gamma >= 0)) throw DomainError("capacity: SNR must be >= 0");
    return bandwidth * std::log1p(gamma) / kLn2;
}

double dispersion(double gamma) {
    if (!(gamma >= 0)) throw DomainError("dispersion: SNR must be >= 0");
    const double s = 1.0 + gamma;
    return 1.0 - 1.0 / (s * s);
}

double decoding_argument(double n, double gamma, double payload_bits, double bandwidth) {
    if (!(gamma > 0)) throw DegenerateChannelError("zero SNR: channel dispersion vanishes");
    if (!(n >= payload_bits)) throw LosslessCodingError("blocklength shorter than payload");
    const double omega = capacity(gamma, bandwidth) - payload_bits / n;
    return kLn2 * omega * std::sqrt(n / dispersion(gamma));
}

double fbl_error_rate(double n, double gamma, double payload_bits, double bandwidth) {
    return q_function(decoding_argument(n, gamma, payload_bits, bandwidth));
}

double log_fbl_error_rate(double n, double gamma, double payload_bits, double bandwidth) {
    return log_q_function(decoding_argument(n, gamma, payload_bits, bandwidth));
}

LinkState link_state(double n, double power, double gain, double noise, double payload_bits,
                     double bandwidth) {
    LinkState s;
    s.n = n;
    s.p = power;
    s.gamma = snr(power, gain, noise);
    if (!(s.gamma > 0)) throw DegenerateChannelError("zero SNR: channel dispersion vanishes");
    if (!(n >= payload_bits)) throw LosslessCodingError("blocklength shorter than payload");
    s.capacity = capacity(s.gamma, bandwidth);
    s.dispersion = dispersion(s.gamma);
    s.omega = s.capacity - payload_bits / n;
    s.beta = std::sqrt(n / s.dispersion);
    s.x = kLn2 * s.omega * s.beta;
    s.eps = q_function(s.x);
    s.log_eps = log_q_function(s.x);
    return s;
}

double loop_reliability(double eps_ul, double eps_dl) {
    if (!(eps_ul >= 0 && eps_ul <= 1 && eps_dl >= 0 && eps_dl <= 1))
        throw DomainError("loop_reliability: error rates must lie in [0, 1]");
    return (1.0 - eps_ul) * (1.0 - eps_dl);
}

double loop_error_approx(double eps_ul, double eps_dl) {
    if (!(eps_ul >= 0 && eps_ul <= 1 && eps_dl >= 0 && eps_dl <= 1))
        throw DomainError("loop_error_approx: error rates must lie in [0, 1]");
    return eps_ul + eps_dl;
}

}  // namespace clfbl
