#include "hw2f/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hw2f/errors.hpp"

namespace hw2f {
namespace {

// Signed integral_t^T exp(-a s) ds; valid for either ordering of t, T.
double b_integral(double a, double t, double T) {
    if (a == 0.0) return T - t;
    return std::exp(-a * t) * -std::expm1(-a * (T - t)) / a;
}

// integral_0^T exp(k u) du
double exp_integral(double k, double T) {
    if (k == 0.0) return T;
    return std::expm1(k * T) / k;
}

bool same_horizon(double a, double b) {
    return std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(b));
}

void check_rho(double rho, const char* name) {
    if (!(rho >= -1.0 && rho <= 1.0))
        throw ConfigError(std::string(name) + " must lie in [-1, 1]");
}

}  // namespace

Hw2fParams::Hw2fParams(double a1, double a2, VolSpec vol, double numeraire_maturity)
    : a1_(a1), a2_(a2), vol_(std::move(vol)), numeraire_(numeraire_maturity) {
    if (!(a2 >= 0.0)) throw ConfigError("a2 must be non-negative");
    if (!(a1 > a2))
        throw ConfigError("a1 must be strictly greater than a2 (equal speeds collapse to one factor)");
    if (!(numeraire_maturity > 0.0)) throw ConfigError("numeraire maturity S must be positive");
    if (const auto* cs = std::get_if<ConstantSigma>(&vol_)) {
        if (!(cs->sigma1 >= 0.0) || !(cs->sigma2 >= 0.0))
            throw ConfigError("sigma1, sigma2 must be non-negative");
        check_rho(cs->rho12, "rho12");
    } else {
        const auto& tc = std::get<TerminalCovariance>(vol_);
        if (!(tc.horizon >= 0.0)) throw ConfigError("terminal covariance horizon must be non-negative");
        if (!(tc.xi1 >= 0.0) || !(tc.xi2 >= 0.0)) throw ConfigError("xi1, xi2 must be non-negative");
        check_rho(tc.rho_m, "rho_m");
    }
}

Hw2fParams Hw2fParams::with_vol(VolSpec vol) const {
    return Hw2fParams(a1_, a2_, std::move(vol), numeraire_);
}

Hw2fParams Hw2fParams::with_numeraire(double numeraire_maturity) const {
    return Hw2fParams(a1_, a2_, vol_, numeraire_maturity);
}

double FactorCovariance::xi12() const {
    return rho_m * std::sqrt(xi1 * xi2);
}

double b_factor(double a, double t, double T) {
    if (a < 0.0) throw DomainError("mean reversion must be non-negative");
    if (t < 0.0 || t > T) throw DomainError("b_factor requires 0 <= t <= T");
    return b_integral(a, t, T);
}

FactorCovariance xi_integrals(const Hw2fParams& params, double T) {
    if (T < 0.0) throw DomainError("xi_integrals requires T >= 0");
    if (const auto* cs = std::get_if<ConstantSigma>(&params.vol())) {
        const double a1 = params.a1(), a2 = params.a2();
        FactorCovariance cov;
        cov.xi1 = cs->sigma1 * cs->sigma1 * exp_integral(2.0 * a1, T);
        cov.xi2 = cs->sigma2 * cs->sigma2 * exp_integral(2.0 * a2, T);
        const double xi12 = cs->rho12 * cs->sigma1 * cs->sigma2 * exp_integral(a1 + a2, T);
        const double denom = std::sqrt(cov.xi1 * cov.xi2);
        cov.rho_m = denom > 0.0 ? std::clamp(xi12 / denom, -1.0, 1.0) : 0.0;
        return cov;
    }
    const auto& tc = std::get<TerminalCovariance>(params.vol());
    if (T == 0.0) return {};  // empty integral
    if (!same_horizon(T, tc.horizon))
        throw ConfigError("terminal covariance is specified at T=" + std::to_string(tc.horizon) +
                          " only; queried at T=" + std::to_string(T));
    return {tc.xi1, tc.xi2, tc.rho_m};
}

Hw2fParams with_terminal_rho(const Hw2fParams& params, double T, double rho_m) {
    const auto cov = xi_integrals(params, T);
    return params.with_vol(TerminalCovariance{T, cov.xi1, cov.xi2, rho_m});
}

Hw2fParams scale_variance(const Hw2fParams& params, double lambda) {
    if (!(lambda > 0.0)) throw DomainError("variance scale must be positive");
    if (const auto* cs = std::get_if<ConstantSigma>(&params.vol())) {
        const double s = std::sqrt(lambda);
        return params.with_vol(ConstantSigma{cs->sigma1 * s, cs->sigma2 * s, cs->rho12});
    }
    auto tc = std::get<TerminalCovariance>(params.vol());
    tc.xi1 *= lambda;
    tc.xi2 *= lambda;
    return params.with_vol(tc);
}

namespace {

struct LogAParts {
    double log_curve_t;
    double b1_ts, b2_ts;
    FactorCovariance cov;
};

double log_a(const DiscountCurve& curve, const Hw2fParams& params, const LogAParts& p, double T) {
    const double S = params.numeraire_maturity();
    const double b1 = b_integral(params.a1(), T, S);
    const double b2 = b_integral(params.a2(), T, S);
    return curve.log_discount(T) - p.log_curve_t +
           0.5 * (p.b1_ts * p.b1_ts - b1 * b1) * p.cov.xi1 +
           0.5 * (p.b2_ts * p.b2_ts - b2 * b2) * p.cov.xi2 +
           (p.b1_ts * p.b2_ts - b1 * b2) * p.cov.xi12();
}

LogAParts log_a_parts(const DiscountCurve& curve, const Hw2fParams& params, double t) {
    const double S = params.numeraire_maturity();
    return {curve.log_discount(t), b_integral(params.a1(), t, S), b_integral(params.a2(), t, S),
            xi_integrals(params, t)};
}

}  // namespace

double bond(const DiscountCurve& curve, const Hw2fParams& params, const FactorState& state,
            double T) {
    const double t = state.t;
    if (t < 0.0) throw DomainError("observation time must be non-negative");
    if (T < t) throw DomainError("bond maturity precedes observation time");
    const auto parts = log_a_parts(curve, params, t);
    const double la = log_a(curve, params, parts, T);
    return std::exp(la - b_integral(params.a1(), t, T) * state.x1 -
                    b_integral(params.a2(), t, T) * state.x2);
}

BondReconstructor::BondReconstructor(const DiscountCurve& curve, const Hw2fParams& params,
                                     double t, std::span<const double> maturities)
    : t_(t) {
    if (t < 0.0) throw DomainError("observation time must be non-negative");
    const auto parts = log_a_parts(curve, params, t);
    log_a_.reserve(maturities.size());
    b1_.reserve(maturities.size());
    b2_.reserve(maturities.size());
    for (double T : maturities) {
        if (T < t) throw DomainError("bond maturity precedes observation time");
        log_a_.push_back(log_a(curve, params, parts, T));
        b1_.push_back(b_integral(params.a1(), t, T));
        b2_.push_back(b_integral(params.a2(), t, T));
    }
}

void BondReconstructor::discount_factors(double x1, double x2, std::span<double> out) const {
    for (std::size_t k = 0; k < log_a_.size(); ++k)
        out[k] = std::exp(log_a_[k] - b1_[k] * x1 - b2_[k] * x2);
}

}  // namespace hw2f
