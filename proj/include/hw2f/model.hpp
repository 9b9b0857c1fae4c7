#pragma once

#include <span>
#include <variant>
#include <vector>

#include "hw2f/curve.hpp"

namespace hw2f {

// Two-factor Hull-White model in driftless form:
//
//     r(t)  = x1(t) + x2(t) + phi(t)
//     X_i(t) = exp(a_i t) x_i(t),   dX_i = sigma_i exp(a_i t) dW_i
//     D(t,T) = A(t,T) exp(-B1(t,T) X1(t) - B2(t,T) X2(t))
//
// phi(t) is never needed explicitly; it is absorbed by fitting A(t,T)
// to the initial curve. All expectations are taken under the forward
// measure of the numeraire bond maturing at S, where X is driftless.

/// Instantaneous volatilities and correlation, constant in time.
struct ConstantSigma {
    double sigma1;
    double sigma2;
    double rho12;
};

/// Terminal covariance of (X1, X2) at a single horizon. Carries no time
/// profile, so it can only be queried at that horizon (or at t = 0).
struct TerminalCovariance {
    double horizon;
    double xi1;
    double xi2;
    double rho_m;
};

using VolSpec = std::variant<ConstantSigma, TerminalCovariance>;

class Hw2fParams {
public:
    /// Requires a1 > a2 >= 0, non-negative vols/variances, |rho| <= 1
    /// and a positive numeraire maturity. Throws ConfigError otherwise.
    Hw2fParams(double a1, double a2, VolSpec vol, double numeraire_maturity);

    double a1() const noexcept { return a1_; }
    double a2() const noexcept { return a2_; }
    const VolSpec& vol() const noexcept { return vol_; }
    double numeraire_maturity() const noexcept { return numeraire_; }

    Hw2fParams with_vol(VolSpec vol) const;
    Hw2fParams with_numeraire(double numeraire_maturity) const;

private:
    double a1_;
    double a2_;
    VolSpec vol_;
    double numeraire_;
};

/// Driftless Markov state observed at time t.
struct FactorState {
    double t = 0.0;
    double x1 = 0.0;
    double x2 = 0.0;
};

/// Terminal covariance of (X1, X2): [[xi1, xi12], [xi12, xi2]] with
/// xi12 = rho_m sqrt(xi1 xi2).
struct FactorCovariance {
    double xi1 = 0.0;
    double xi2 = 0.0;
    double rho_m = 0.0;

    double xi12() const;
};

/// B(t,T) = integral_t^T exp(-a s) ds. Exact T - t branch for a = 0.
double b_factor(double a, double t, double T);

/// Xi integrals of the driftless factors up to T.
FactorCovariance xi_integrals(const Hw2fParams& params, double T);

/// Same variances at T, terminal correlation replaced by rho_m. The
/// result is a TerminalCovariance spec with horizon T.
Hw2fParams with_terminal_rho(const Hw2fParams& params, double T, double rho_m);

/// Multiplies xi1, xi2 (and hence xi12) by `lambda`; rho_m unchanged.
/// ConstantSigma specs are scaled through sigma_i -> sqrt(lambda) sigma_i.
Hw2fParams scale_variance(const Hw2fParams& params, double lambda);

/// Reconstructed discount factor D(t,T) at the given state.
double bond(const DiscountCurve& curve, const Hw2fParams& params,
            const FactorState& state, double T);

/// Precomputed log A(t,T_k), B1(t,T_k), B2(t,T_k) for a fixed observation
/// time and maturity set. Evaluates the same formula as bond() for many
/// states.
class BondReconstructor {
public:
    BondReconstructor(const DiscountCurve& curve, const Hw2fParams& params,
                      double t, std::span<const double> maturities);

    double observation() const noexcept { return t_; }
    std::size_t size() const noexcept { return log_a_.size(); }

    /// out[k] = D(t, maturities[k]) at (x1, x2).
    void discount_factors(double x1, double x2, std::span<double> out) const;

private:
    double t_;
    std::vector<double> log_a_;
    std::vector<double> b1_;
    std::vector<double> b2_;
};

}  // namespace hw2f
