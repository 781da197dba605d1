#pragma once

#include <cmath>
#include <limits>

namespace clfbl {

/// A real number held as sign * exp(log_abs).
///
/// Error rates in this model routinely fall far below the smallest double
/// (Q(70) ~ 1e-1066), yet the optimizer and the scans need the sign and the
/// relative size of sums of such terms. SignedLog keeps both without
/// underflow. A zero value has sign == 0.
struct SignedLog {
    int sign = 0;
    double log_abs = -std::numeric_limits<double>::infinity();

    static SignedLog zero() { return {}; }

    static SignedLog from_double(double v) {
        if (v == 0.0) return {};
        return {v > 0.0 ? 1 : -1, std::log(std::fabs(v))};
    }

    /// exp(log_value) with the given sign, without ever materializing the value.
    static SignedLog from_log(double log_value, int sign = 1) {
        if (sign == 0 || log_value == -std::numeric_limits<double>::infinity()) return {};
        return {sign > 0 ? 1 : -1, log_value};
    }

    bool is_zero() const { return sign == 0; }

    /// Value as a double; magnitudes below the double range flush to zero.
    double to_double() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }

    SignedLog operator-() const { return {-sign, log_abs}; }

    SignedLog operator*(const SignedLog& o) const {
        if (sign == 0 || o.sign == 0) return {};
        return {sign * o.sign, log_abs + o.log_abs};
    }

    SignedLog operator*(double c) const { return *this * from_double(c); }

    SignedLog operator+(const SignedLog& o) const {
        if (sign == 0) return o;
        if (o.sign == 0) return *this;
        const bool this_larger = log_abs >= o.log_abs;
        const SignedLog& big = this_larger ? *this : o;
        const SignedLog& small = this_larger ? o : *this;
        const double ratio = std::exp(small.log_abs - big.log_abs);
        if (big.sign == small.sign) return {big.sign, big.log_abs + std::log1p(ratio)};
        if (ratio == 1.0) return {};
        return {big.sign, big.log_abs + std::log1p(-ratio)};
    }

    SignedLog operator-(const SignedLog& o) const { return *this + (-o); }
};

}  // namespace clfbl
