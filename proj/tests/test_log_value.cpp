#include "doctest.h"

#include <cmath>
#include <random>

#include "richlab/errors.hpp"
#include "richlab/log_value.hpp"

using namespace richlab;

TEST_CASE("construction") {
    const LogValue x(2, 3);
    CHECK(x.base() == 2);
    CHECK(x.exponent() == 3);
    CHECK(std::fabs(x.natural_log() - 3 * std::log(2.0L)) < 1e-18L);
    CHECK(LogValue::from_natural_log(3, std::log(9.0L)).exponent() == doctest::Approx(2).epsilon(1e-17));
    CHECK_THROWS_AS(LogValue(1, 0), InputError);
    CHECK_THROWS_AS(LogValue(2, INFINITY), InputError);
    CHECK_THROWS_AS(LogValue(2, NAN), InputError);
}

TEST_CASE("from_decimal brackets the exact logarithm") {
    const auto up = LogValue::from_decimal(2, "1024", Rounding::up);
    const auto down = LogValue::from_decimal(2, "1024", Rounding::down);
    CHECK(down.exponent() <= 10);
    CHECK(up.exponent() >= 10);
    CHECK(up.exponent() - down.exponent() < 1e-17L);
    // Beyond long double range as a number, fine as an exponent.
    const std::string huge = "1" + std::string(6000, '0');
    const auto h = LogValue::from_decimal(10, huge, Rounding::up);
    CHECK(h.exponent() == doctest::Approx(6000).epsilon(1e-15));
    CHECK_THROWS_AS(LogValue::from_decimal(2, "0", Rounding::up), InputError);
    CHECK_THROWS_AS(LogValue::from_decimal(2, "-5", Rounding::up), InputError);
    CHECK_THROWS_AS(LogValue::from_decimal(2, "12a", Rounding::up), InputError);
}

TEST_CASE("products and sums") {
    const LogValue a(2, 3), b(2, 4);
    CHECK((a * b).exponent() == doctest::Approx(7).epsilon(1e-17));
    // 8 + 16 = 24
    CHECK((a + b).exponent() == doctest::Approx(static_cast<double>(std::log2(24.0L))).epsilon(1e-16));
    CHECK(a.pow(3).exponent() == doctest::Approx(9).epsilon(1e-17));
    CHECK_THROWS_AS(a + LogValue(3, 1), InputError);
    CHECK_THROWS_AS(a * LogValue(3, 1), InputError);

    // Widely separated magnitudes do not overflow.
    const LogValue big(2, 20000), small(2, -20000);
    CHECK((big + small).exponent() == doctest::Approx(20000));
}

TEST_CASE("sums are commutative and nearly associative") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-50, 50);
    for (int i = 0; i < 500; ++i) {
        const LogValue x(3, u(rng)), y(3, u(rng)), z(3, u(rng));
        CHECK((x + y).exponent() == (y + x).exponent());
        CHECK(((x + y) + z).exponent() == doctest::Approx(static_cast<double>((x + (y + z)).exponent())).epsilon(1e-15));
        CHECK(((x * y) * z).exponent() == doctest::Approx(static_cast<double>((x * (y * z)).exponent())).epsilon(1e-15));
    }
}

TEST_CASE("upward rounding never falls below nearest") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-30, 30);
    for (int i = 0; i < 500; ++i) {
        const Real ex = u(rng), ey = u(rng);
        const LogValue xn(2, ex), yn(2, ey);
        const LogValue xu(2, ex, Rounding::up), yu(2, ey, Rounding::up);
        const LogValue xd(2, ex, Rounding::down), yd(2, ey, Rounding::down);
        CHECK((xu + yu).exponent() >= (xn + yn).exponent());
        CHECK((xd + yd).exponent() <= (xn + yn).exponent());
        CHECK((xu * yu).exponent() >= (xn * yn).exponent());
        CHECK((xd * yd).exponent() <= (xn * yn).exponent());
        CHECK((xu + yu).rounding() == Rounding::up);
    }
    CHECK(round_outward(1, Rounding::up) > 1);
    CHECK(round_outward(1, Rounding::down) < 1);
    CHECK(round_outward(1, Rounding::nearest) == 1);
}

TEST_CASE("ordering") {
    CHECK(LogValue(2, 1) < LogValue(2, 2));
    CHECK(LogValue(2, 2) == LogValue(2, 2, Rounding::up));
    CHECK_FALSE(LogValue(2, 2) < LogValue(2, 1));
    CHECK_THROWS_AS((void)(LogValue(2, 1) < LogValue(3, 2)), InputError);
}
