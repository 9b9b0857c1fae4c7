#pragma once

#include <span>
#include <vector>

#include "hw2f/curve.hpp"
#include "hw2f/model.hpp"
#include "hw2f/swap.hpp"

namespace hw2f {

// Gaussian swap-rate proxy. Writing the swap rate through the compounding
// identity D(t,start)/D(t,end) = (1 + delta S)^((end-start)/delta) gives,
// to first order at the swap start,
//
//     dS = G (B1(T_n, end) dX1 + B2(T_n, end) dX2),
//     G  = (1 + delta S(0)) / (end - start),
//
// with S(0) the time-0 proxy rate. Covariances of terminal swap rates then
// follow from the factor covariance at T_n.

/// Loading of a terminal swap rate on (X1, X2).
struct SwapLoading {
    double gearing;
    double b1;
    double b2;
};

SwapLoading swap_loading(const Hw2fParams& params, double observation, const SwapSpec& spec,
                         const DiscountCurve& curve);

/// Covariance of the two terminal swap rates under the Gaussian proxy.
/// Both swaps must start at `observation`.
double swap_covariance(const Hw2fParams& params, double observation, const SwapSpec& a,
                       const SwapSpec& b, const DiscountCurve& curve);

/// Covariance normalised by both variances. Throws DegenerateError when
/// either variance is zero.
double swap_correlation(const Hw2fParams& params, double observation, const SwapSpec& a,
                        const SwapSpec& b, const DiscountCurve& curve);

/// sqrt(Var S(T_n) / T_n) under the proxy.
double implied_normal_vol(const Hw2fParams& params, double observation, const SwapSpec& spec,
                          const DiscountCurve& curve);

enum class Region { I, II, III };
enum class LimitSign { plus, minus, degenerate };

const char* to_string(Region r);
const char* to_string(LimitSign s);

/// Position of sqrt(xi2/xi1) against the B1/B2 ratios of a short and a
/// long swap starting at the same date.
///
///   I   : ratio_vol >  ratio_short
///   II  : ratio_short >= ratio_vol > ratio_long
///   III : ratio_long >= ratio_vol
///
/// limit_sign is the sign the swap-rate correlation takes as rho_m -> -1:
/// minus in region II, plus in I and III, degenerate when a swap's
/// loading vanishes at the limit.
struct RegionReport {
    double ratio_vol;
    double ratio_short;
    double ratio_long;
    Region region;
    LimitSign limit_sign;
};

/// B1(T_n, end) / B2(T_n, end); strictly decreasing in `end` since a1 > a2.
double b_ratio(const Hw2fParams& params, double observation, double end);

RegionReport classify_region(const Hw2fParams& params, double observation, double short_end,
                             double long_end);

/// Correlation of the two swap rates in the limit rho_m -> -1: +1 or -1.
/// Throws DegenerateError when the limit is undefined.
double limit_correlation(const Hw2fParams& params, double observation, const SwapSpec& a,
                         const SwapSpec& b);

struct CorrelationPoint {
    double rho_m;
    double rho_swap;
};

/// swap_correlation over a grid of terminal factor correlations; the
/// variances at `observation` are kept. Output sorted by rho_m.
std::vector<CorrelationPoint> correlation_curve(const Hw2fParams& params, double observation,
                                                const SwapSpec& a, const SwapSpec& b,
                                                const DiscountCurve& curve,
                                                std::span<const double> rho_grid);

struct MaturityPoint {
    double long_end;
    double rho_swap;
    Region region;
};

/// Correlation of the fixed short swap with long swaps ending at each grid
/// date (same start and accrual period as the short swap).
std::vector<MaturityPoint> maturity_sweep(const Hw2fParams& params, double observation,
                                          const SwapSpec& short_swap,
                                          std::span<const double> long_end_grid,
                                          const DiscountCurve& curve);

/// End date at which b_ratio equals sqrt(xi2/xi1), i.e. the III/II
/// boundary for long swaps. Searched in (short_end, max_end]; throws
/// DegenerateError when there is no crossing in that interval.
double region_boundary_end(const Hw2fParams& params, double observation, double short_end,
                           double max_end);

/// `points` evenly spaced values from `from` to `to`, both included.
std::vector<double> linear_grid(double from, double to, int points);

struct RhoCalibration {
    double rho_m;
    double achieved;
    int multiplicity;  // number of roots in [-1, 1]
};

/// Terminal factor correlation reproducing a target swap-rate correlation.
/// When rho_swap(rho_m) is non-monotone the root with the largest rho_m is
/// returned. Throws UnattainableTarget carrying the achievable minimum.
RhoCalibration calibrate_rho(const Hw2fParams& params, double observation, const SwapSpec& a,
                             const SwapSpec& b, const DiscountCurve& curve, double target);

struct LevelCalibration {
    Hw2fParams params;
    double scale;
};

/// Scales (xi1, xi2) by lambda so that the proxy normal vol of `spec`
/// equals the target; rho_m, and with it the region, is unchanged.
LevelCalibration calibrate_level(const Hw2fParams& params, double observation,
                                 const SwapSpec& spec, const DiscountCurve& curve,
                                 double target_normal_vol);

}  // namespace hw2f
