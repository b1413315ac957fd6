#pragma once

#include <compare>
#include <string>

#include "richlab/function_spec.hpp"

namespace richlab {

enum class Rounding { up, down, nearest };

// Positive number q^exponent held by its base-q exponent.
//
// Products add exponents and sums use a stable log-sum-exp; both results are
// nudged outward by a few ulps in the direction of the value's rounding mode,
// so a chain of `up` operations never underestimates the exact value. The
// result of a binary operation takes the left operand's rounding mode.
class LogValue {
public:
    LogValue(int base, Real exponent, Rounding rounding = Rounding::nearest);

    static LogValue from_natural_log(int base, Real ln_value, Rounding rounding = Rounding::nearest);
    // log_q of a positive integer given in decimal.
    static LogValue from_decimal(int base, const std::string& decimal, Rounding rounding);

    int base() const noexcept { return base_; }
    Real exponent() const noexcept { return exponent_; }
    Rounding rounding() const noexcept { return rounding_; }
    Real natural_log() const;

    LogValue with_rounding(Rounding r) const { return LogValue(base_, exponent_, r); }
    LogValue pow(Real k) const;

    friend LogValue operator*(const LogValue& x, const LogValue& y);
    friend LogValue operator+(const LogValue& x, const LogValue& y);

    // Ordering of the represented values (base must match).
    friend std::partial_ordering operator<=>(const LogValue& x, const LogValue& y);
    friend bool operator==(const LogValue& x, const LogValue& y);

private:
    int base_;
    Real exponent_;
    Rounding rounding_;
};

// Moves x by `ulps` units in the last place in the given direction.
Real round_outward(Real x, Rounding r, int ulps = 2);

} // namespace richlab
