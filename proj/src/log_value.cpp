#include "richlab/log_value.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "richlab/errors.hpp"

namespace richlab {

Real round_outward(Real x, Rounding r, int ulps) {
    if (r == Rounding::nearest) return x;
    const Real target = r == Rounding::up ? std::numeric_limits<Real>::infinity()
                                          : -std::numeric_limits<Real>::infinity();
    for (int i = 0; i < ulps; ++i) x = std::nextafter(x, target);
    return x;
}

LogValue::LogValue(int base, Real exponent, Rounding rounding)
    : base_(base), exponent_(exponent), rounding_(rounding) {
    if (base < 2) throw InputError("LogValue base must be >= 2");
    if (!std::isfinite(exponent)) throw InputError("LogValue exponent must be finite");
}

LogValue LogValue::from_natural_log(int base, Real ln_value, Rounding rounding) {
    const Real e = ln_value / std::log(static_cast<Real>(base));
    return LogValue(base, round_outward(e, rounding, 4), rounding);
}

LogValue LogValue::from_decimal(int base, const std::string& decimal, Rounding rounding) {
    using boost::multiprecision::cpp_bin_float_50;
    using boost::multiprecision::cpp_int;
    cpp_int n;
    try {
        n = cpp_int(decimal);
    } catch (const std::exception&) {
        throw InputError("invalid decimal integer '" + decimal + "'");
    }
    if (n <= 0) throw InputError("LogValue needs a positive integer, got " + decimal);
    const cpp_bin_float_50 e = boost::multiprecision::log(cpp_bin_float_50(n)) /
                               boost::multiprecision::log(cpp_bin_float_50(base));
    return LogValue(base, round_outward(e.convert_to<Real>(), rounding, 2), rounding);
}

Real LogValue::natural_log() const { return exponent_ * std::log(static_cast<Real>(base_)); }

LogValue LogValue::pow(Real k) const {
    return LogValue(base_, round_outward(exponent_ * k, rounding_), rounding_);
}

namespace {
void require_same_base(const LogValue& x, const LogValue& y) {
    if (x.base() != y.base()) throw InputError("LogValue base mismatch");
}
} // namespace

LogValue operator*(const LogValue& x, const LogValue& y) {
    require_same_base(x, y);
    return LogValue(x.base_, round_outward(x.exponent_ + y.exponent_, x.rounding_), x.rounding_);
}

LogValue operator+(const LogValue& x, const LogValue& y) {
    require_same_base(x, y);
    const Real hi = std::max(x.exponent_, y.exponent_);
    const Real lo = std::min(x.exponent_, y.exponent_);
    const Real ln_q = std::log(static_cast<Real>(x.base_));
    // log_q(q^hi + q^lo) = hi + log1p(q^(lo - hi)) / ln q
    const Real correction = std::log1p(std::exp((lo - hi) * ln_q)) / ln_q;
    Real sum = hi + round_outward(correction, x.rounding_, 4);
    return LogValue(x.base_, round_outward(sum, x.rounding_), x.rounding_);
}

std::partial_ordering operator<=>(const LogValue& x, const LogValue& y) {
    require_same_base(x, y);
    return x.exponent_ <=> y.exponent_;
}

bool operator==(const LogValue& x, const LogValue& y) {
    return x.base_ == y.base_ && x.exponent_ == y.exponent_;
}

} // namespace richlab
