#include "hw2f/swap_analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "hw2f/errors.hpp"

namespace hw2f {
namespace {

constexpr double kStartTol = 1e-9;

// Coordinates of a loading in the Cholesky basis of the factor covariance:
// Cov(a, b) = p_a p_b + q_a q_b. At rho_m = +-1 the q component is exactly
// zero, so correlations at the limits come out as exact +-1.
struct Projected {
    double p;
    double q;
};

Projected project(const SwapLoading& l, const FactorCovariance& cov) {
    const double u1 = l.gearing * l.b1;
    const double u2 = l.gearing * l.b2;
    const double s1 = std::sqrt(cov.xi1);
    const double s2 = std::sqrt(cov.xi2);
    const double rho = cov.rho_m;
    const double orth = std::sqrt((1.0 - rho) * (1.0 + rho));
    return {s1 * u1 + rho * s2 * u2, orth * s2 * u2};
}

double covariance(const Projected& a, const Projected& b) {
    return a.p * b.p + a.q * b.q;
}

double correlation(const Projected& a, const Projected& b) {
    const double va = covariance(a, a);
    const double vb = covariance(b, b);
    if (!(va > 0.0) || !(vb > 0.0))
        throw DegenerateError("swap-rate correlation undefined: zero variance");
    const double c = covariance(a, b) / (std::sqrt(va) * std::sqrt(vb));
    if (std::abs(c) > 1.0 + 1e-12) throw std::logic_error("correlation outside [-1, 1]");
    return std::clamp(c, -1.0, 1.0);
}

double vol_ratio(const FactorCovariance& cov) {
    if (cov.xi1 == 0.0 && cov.xi2 == 0.0)
        throw DegenerateError("both factor variances are zero; regions are undefined");
    if (cov.xi1 == 0.0) return std::numeric_limits<double>::infinity();
    return std::sqrt(cov.xi2 / cov.xi1);
}

// Sign of B1 sqrt(xi1) - B2 sqrt(xi2) = B2 sqrt(xi1) (ratio - ratio_vol),
// zero when the loading cancels at rho_m = -1.
int limit_factor_sign(double ratio, double ratio_vol) {
    if (std::isinf(ratio_vol)) return -1;
    const double diff = ratio - ratio_vol;
    if (std::abs(diff) <= 1e-12 * std::max(ratio, ratio_vol)) return 0;
    return diff > 0.0 ? 1 : -1;
}

LimitSign limit_sign_of(double ratio_a, double ratio_b, double ratio_vol) {
    const int s = limit_factor_sign(ratio_a, ratio_vol) * limit_factor_sign(ratio_b, ratio_vol);
    if (s == 0) return LimitSign::degenerate;
    return s > 0 ? LimitSign::plus : LimitSign::minus;
}

Region region_of(double ratio_vol, double ratio_short, double ratio_long) {
    if (ratio_vol > ratio_short) return Region::I;
    if (ratio_vol > ratio_long) return Region::II;
    return Region::III;
}

void check_observation(double observation) {
    if (!(observation > 0.0)) throw DomainError("observation date must be positive");
}

}  // namespace

const char* to_string(Region r) {
    switch (r) {
        case Region::I: return "I";
        case Region::II: return "II";
        case Region::III: return "III";
    }
    return "?";
}

const char* to_string(LimitSign s) {
    switch (s) {
        case LimitSign::plus: return "+1";
        case LimitSign::minus: return "-1";
        case LimitSign::degenerate: return "degenerate";
    }
    return "?";
}

SwapLoading swap_loading(const Hw2fParams& params, double observation, const SwapSpec& spec,
                         const DiscountCurve& curve) {
    spec.validate();
    if (std::abs(spec.start - observation) > kStartTol)
        throw DomainError("swap must start at the observation date");
    const double s0 = proxy_par_rate(curve, spec);
    return {(1.0 + spec.delta * s0) / (spec.end - spec.start),
            b_factor(params.a1(), observation, spec.end),
            b_factor(params.a2(), observation, spec.end)};
}

double swap_covariance(const Hw2fParams& params, double observation, const SwapSpec& a,
                       const SwapSpec& b, const DiscountCurve& curve) {
    const auto cov = xi_integrals(params, observation);
    return covariance(project(swap_loading(params, observation, a, curve), cov),
                      project(swap_loading(params, observation, b, curve), cov));
}

double swap_correlation(const Hw2fParams& params, double observation, const SwapSpec& a,
                        const SwapSpec& b, const DiscountCurve& curve) {
    const auto cov = xi_integrals(params, observation);
    return correlation(project(swap_loading(params, observation, a, curve), cov),
                       project(swap_loading(params, observation, b, curve), cov));
}

double implied_normal_vol(const Hw2fParams& params, double observation, const SwapSpec& spec,
                          const DiscountCurve& curve) {
    check_observation(observation);
    return std::sqrt(swap_covariance(params, observation, spec, spec, curve) / observation);
}

double b_ratio(const Hw2fParams& params, double observation, double end) {
    if (!(end > observation)) throw DomainError("swap end must be after the observation date");
    return b_factor(params.a1(), observation, end) / b_factor(params.a2(), observation, end);
}

RegionReport classify_region(const Hw2fParams& params, double observation, double short_end,
                             double long_end) {
    check_observation(observation);
    if (!(short_end < long_end)) throw ConfigError("short swap must end before the long swap");
    const double rv = vol_ratio(xi_integrals(params, observation));
    const double rs = b_ratio(params, observation, short_end);
    const double rl = b_ratio(params, observation, long_end);
    return {rv, rs, rl, region_of(rv, rs, rl), limit_sign_of(rs, rl, rv)};
}

double limit_correlation(const Hw2fParams& params, double observation, const SwapSpec& a,
                         const SwapSpec& b) {
    check_observation(observation);
    const double rv = vol_ratio(xi_integrals(params, observation));
    switch (limit_sign_of(b_ratio(params, observation, a.end), b_ratio(params, observation, b.end),
                          rv)) {
        case LimitSign::plus: return 1.0;
        case LimitSign::minus: return -1.0;
        case LimitSign::degenerate: break;
    }
    throw DegenerateError("a swap loading vanishes at rho_m = -1; limit correlation undefined");
}

std::vector<CorrelationPoint> correlation_curve(const Hw2fParams& params, double observation,
                                                const SwapSpec& a, const SwapSpec& b,
                                                const DiscountCurve& curve,
                                                std::span<const double> rho_grid) {
    std::vector<double> grid(rho_grid.begin(), rho_grid.end());
    std::sort(grid.begin(), grid.end());
    std::vector<CorrelationPoint> out;
    out.reserve(grid.size());
    for (double rho : grid) {
        const auto p = with_terminal_rho(params, observation, rho);
        out.push_back({rho, swap_correlation(p, observation, a, b, curve)});
    }
    return out;
}

std::vector<MaturityPoint> maturity_sweep(const Hw2fParams& params, double observation,
                                          const SwapSpec& short_swap,
                                          std::span<const double> long_end_grid,
                                          const DiscountCurve& curve) {
    check_observation(observation);
    const auto cov = xi_integrals(params, observation);
    const double rv = vol_ratio(cov);
    const double rs = b_ratio(params, observation, short_swap.end);
    const auto ps = project(swap_loading(params, observation, short_swap, curve), cov);

    std::vector<MaturityPoint> out;
    out.reserve(long_end_grid.size());
    for (double end : long_end_grid) {
        if (end < short_swap.end - kStartTol)
            throw ConfigError("long swap end precedes the short swap end");
        SwapSpec long_swap = short_swap;
        long_swap.end = end;
        const auto pl = project(swap_loading(params, observation, long_swap, curve), cov);
        out.push_back({end, correlation(ps, pl),
                       region_of(rv, rs, b_ratio(params, observation, end))});
    }
    return out;
}

double region_boundary_end(const Hw2fParams& params, double observation, double short_end,
                           double max_end) {
    check_observation(observation);
    const double rv = vol_ratio(xi_integrals(params, observation));
    auto f = [&](double end) { return b_ratio(params, observation, end) - rv; };
    const double lo = short_end, hi = max_end;
    if (!(hi > lo)) throw ConfigError("boundary search interval is empty");
    const double flo = f(lo), fhi = f(hi);
    if (flo < 0.0 || fhi > 0.0)
        throw DegenerateError("no III/II boundary between the given end dates");
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    std::uintmax_t max_iter = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(
        f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(52), max_iter);
    return 0.5 * (a + b);
}

std::vector<double> linear_grid(double from, double to, int points) {
    if (points < 2) throw ConfigError("grid needs at least two points");
    std::vector<double> g(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) g[i] = from + (to - from) * i / (points - 1);
    g.back() = to;
    return g;
}

RhoCalibration calibrate_rho(const Hw2fParams& params, double observation, const SwapSpec& a,
                             const SwapSpec& b, const DiscountCurve& curve, double target) {
    auto corr_at = [&](double rho) {
        return swap_correlation(with_terminal_rho(params, observation, rho), observation, a, b,
                                curve);
    };

    // Uniform scan, densified towards -1 where the curve can turn sharply.
    std::vector<double> grid = linear_grid(-1.0, 1.0, 2001);
    for (int k = 2; k <= 12; ++k) grid.push_back(-1.0 + std::pow(10.0, -k));
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::vector<double> f(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) f[i] = corr_at(grid[i]) - target;

    const auto imin = static_cast<std::size_t>(std::min_element(f.begin(), f.end()) - f.begin());
    double rho_min = grid[imin];
    double corr_min = f[imin] + target;
    if (imin > 0 && imin + 1 < grid.size()) {
        const auto [x, y] = boost::math::tools::brent_find_minima(corr_at, grid[imin - 1],
                                                                  grid[imin + 1], 50);
        if (y < corr_min) {
            rho_min = x;
            corr_min = y;
        }
    }
    if (target > 1.0 || target < corr_min - 1e-12)
        throw UnattainableTarget("target swap-rate correlation " + std::to_string(target) +
                                     " is outside the achievable range [" +
                                     std::to_string(corr_min) + ", 1]",
                                 corr_min);

    // Roots: exact grid zeros plus strict sign changes between neighbours.
    std::vector<std::pair<double, double>> brackets;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (f[i] == 0.0) {
            brackets.emplace_back(grid[i], grid[i]);
        } else if (i + 1 < grid.size() && f[i + 1] != 0.0 && (f[i] < 0.0) != (f[i + 1] < 0.0)) {
            brackets.emplace_back(grid[i], grid[i + 1]);
        }
    }
    if (brackets.empty()) {
        // target touches the minimum without crossing it
        return {rho_min, corr_min, 1};
    }

    auto [lo, hi] = brackets.back();
    double root = lo;
    if (lo != hi) {
        auto g = [&](double rho) { return corr_at(rho) - target; };
        const auto [x0, x1] = boost::math::tools::bisect(
            g, lo, hi, [](double u, double v) { return std::abs(v - u) <= 1e-15; });
        root = std::abs(g(x0)) <= std::abs(g(x1)) ? x0 : x1;
    }
    return {root, corr_at(root), static_cast<int>(brackets.size())};
}

LevelCalibration calibrate_level(const Hw2fParams& params, double observation,
                                 const SwapSpec& spec, const DiscountCurve& curve,
                                 double target_normal_vol) {
    check_observation(observation);
    if (!(target_normal_vol > 0.0)) throw DomainError("target normal vol must be positive");
    const double unit = swap_covariance(params, observation, spec, spec, curve);
    if (!(unit > 0.0)) throw DegenerateError("swap-rate variance is zero; cannot scale to a target vol");
    const double lambda = target_normal_vol * target_normal_vol * observation / unit;
    return {scale_variance(params, lambda), lambda};
}

}  // namespace hw2f
