#include <doctest.h>

#include <cmath>

#include "hw2f/curve.hpp"
#include "hw2f/errors.hpp"
#include "hw2f/model.hpp"

using namespace hw2f;

TEST_CASE("B factor") {
    CHECK(b_factor(0.1, 0.0, 10.0) == doctest::Approx(6.321205588285577).epsilon(1e-15));
    CHECK(b_factor(0.0, 2.0, 7.0) == doctest::Approx(5.0).epsilon(1e-15));
    // Continuity at a -> 0.
    CHECK(b_factor(1e-12, 2.0, 7.0) == doctest::Approx(5.0).epsilon(1e-9));
    // Driftless convention: B(a, t, T) = e^{-at}(1 - e^{-a(T-t)})/a.
    CHECK(b_factor(0.5, 1.0, 3.0) ==
          doctest::Approx(std::exp(-0.5) * (1.0 - std::exp(-1.0)) / 0.5).epsilon(1e-14));
    CHECK_THROWS_AS(b_factor(-0.1, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(b_factor(0.1, 2.0, 1.0), DomainError);
}

TEST_CASE("factor variances for constant sigma") {
    const Hw2fParams p(0.5, 0.0, ConstantSigma{0.01, 0.02, 0.3}, 10.0);
    const auto xi = xi_integrals(p, 2.0);
    CHECK(xi.xi1 == doctest::Approx(6.3890561e-4).epsilon(1e-8));
    CHECK(xi.xi2 == doctest::Approx(0.0004 * 2.0).epsilon(1e-14));
    // Cross term: sigma1 sigma2 rho (e^{(a1+a2)T} - 1)/(a1+a2).
    CHECK(xi.xi12() == doctest::Approx(0.01 * 0.02 * 0.3 * std::expm1(1.0) / 0.5).epsilon(1e-12));
    const auto zero = xi_integrals(p, 0.0);
    CHECK(zero.xi1 == 0.0);
    CHECK(zero.xi2 == 0.0);
}

TEST_CASE("terminal covariance is only defined at its horizon") {
    const Hw2fParams p(0.1, 0.01, TerminalCovariance{10.0, 4e-4, 3.6e-5, -0.5}, 20.0);
    const auto xi = xi_integrals(p, 10.0);
    CHECK(xi.xi1 == 4e-4);
    CHECK(xi.rho_m == -0.5);
    CHECK(xi_integrals(p, 0.0).xi1 == 0.0);
    CHECK_THROWS(xi_integrals(p, 5.0));

    const auto q = with_terminal_rho(p, 10.0, 0.7);
    CHECK(xi_integrals(q, 10.0).rho_m == 0.7);
    CHECK(xi_integrals(q, 10.0).xi2 == 3.6e-5);
    CHECK(xi_integrals(scale_variance(p, 4.0), 10.0).xi1 == doctest::Approx(1.6e-3));
}

TEST_CASE("parameter validation") {
    CHECK_THROWS(Hw2fParams(0.01, 0.1, ConstantSigma{0.01, 0.01, 0.0}, 10.0));
    CHECK_THROWS(Hw2fParams(0.1, 0.1, ConstantSigma{0.01, 0.01, 0.0}, 10.0));
    CHECK_THROWS(Hw2fParams(0.1, -0.01, ConstantSigma{0.01, 0.01, 0.0}, 10.0));
    CHECK_THROWS(Hw2fParams(0.1, 0.01, ConstantSigma{0.01, 0.01, 1.5}, 10.0));
    CHECK_THROWS(Hw2fParams(0.1, 0.01, ConstantSigma{-0.01, 0.01, 0.0}, 10.0));
    CHECK_THROWS(Hw2fParams(0.1, 0.01, ConstantSigma{0.01, 0.01, 0.0}, 0.0));
    CHECK_NOTHROW(Hw2fParams(0.1, 0.01, ConstantSigma{0.0, 0.0, 0.0}, 10.0));
}

TEST_CASE("bond reconstruction") {
    const auto curve = DiscountCurve::from_pillars({{1.0, 0.985}, {5.0, 0.9}, {20.0, 0.6}});
    const Hw2fParams p(0.3, 0.02, ConstantSigma{0.01, 0.008, -0.4}, 20.0);

    SUBCASE("time zero returns the curve") {
        CHECK(bond(curve, p, FactorState{0.0, 0.0, 0.0}, 7.0) ==
              doctest::Approx(curve.discount(7.0)).epsilon(1e-14));
    }
    SUBCASE("zero volatility gives the forward discount factor") {
        const Hw2fParams flat(0.3, 0.02, ConstantSigma{0.0, 0.0, 0.0}, 20.0);
        CHECK(bond(curve, flat, FactorState{3.0, 0.0, 0.0}, 9.0) ==
              doctest::Approx(curve.discount(9.0) / curve.discount(3.0)).epsilon(1e-14));
    }
    SUBCASE("log-affine in the factors") {
        const FactorState s{3.0, 0.01, -0.02};
        const double l0 = std::log(bond(curve, p, FactorState{3.0, 0.0, 0.0}, 9.0));
        const double l1 = std::log(bond(curve, p, s, 9.0));
        CHECK(l1 - l0 == doctest::Approx(-b_factor(0.3, 3.0, 9.0) * 0.01 +
                                         b_factor(0.02, 3.0, 9.0) * 0.02)
                             .epsilon(1e-12));
    }
    SUBCASE("reconstructor matches the scalar formula") {
        const std::vector<double> mats = {3.0, 4.5, 12.0, 20.0};
        const BondReconstructor r(curve, p, 3.0, mats);
        std::vector<double> out(mats.size());
        r.discount_factors(0.004, -0.01, out);
        for (std::size_t i = 0; i < mats.size(); ++i)
            CHECK(out[i] == doctest::Approx(bond(curve, p, FactorState{3.0, 0.004, -0.01}, mats[i]))
                                .epsilon(1e-14));
        CHECK(out[0] == doctest::Approx(1.0).epsilon(1e-15));
    }
}
