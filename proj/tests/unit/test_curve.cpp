#include <doctest.h>

#include <cmath>

#include "hw2f/curve.hpp"
#include "hw2f/errors.hpp"

using namespace hw2f;

TEST_CASE("flat curve discounts with a continuous zero rate") {
    const auto c = DiscountCurve::flat(0.02);
    CHECK(c.discount(0.0) == 1.0);
    CHECK(c.discount(10.0) == doctest::Approx(std::exp(-0.2)).epsilon(1e-15));
    CHECK(c.log_discount(7.5) == doctest::Approx(-0.15).epsilon(1e-15));
    CHECK_THROWS_AS(c.discount(-1.0), DomainError);
}

TEST_CASE("pillar curve interpolates log-linearly and extrapolates flat-forward") {
    const auto c = DiscountCurve::from_pillars({{1.0, 0.98}, {3.0, 0.92}});
    CHECK(c.discount(1.0) == doctest::Approx(0.98).epsilon(1e-15));
    // Midpoint of the log-linear segment is the geometric mean.
    CHECK(c.discount(2.0) == doctest::Approx(std::sqrt(0.98 * 0.92)).epsilon(1e-14));
    // Implied (0, 1) node: D(0.5) = 0.98^0.5.
    CHECK(c.discount(0.5) == doctest::Approx(std::sqrt(0.98)).epsilon(1e-14));
    // Beyond the last pillar the last segment's forward continues.
    const double fwd = std::log(0.98 / 0.92) / 2.0;
    CHECK(c.discount(5.0) == doctest::Approx(0.92 * std::exp(-2.0 * fwd)).epsilon(1e-14));
}

TEST_CASE("pillar validation") {
    CHECK_THROWS_AS(DiscountCurve::from_pillars({}), ConfigError);
    CHECK_THROWS(DiscountCurve::from_pillars({{1.0, -0.5}}));
    CHECK_THROWS(DiscountCurve::from_pillars({{2.0, 0.9}, {1.0, 0.95}}));
    CHECK_THROWS(DiscountCurve::from_pillars({{1.0, 1.01}}, true));
    CHECK_NOTHROW(DiscountCurve::from_pillars({{1.0, 1.01}}, false));
}
