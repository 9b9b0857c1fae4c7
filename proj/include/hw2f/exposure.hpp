#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "hw2f/curve.hpp"
#include "hw2f/model.hpp"
#include "hw2f/monte_carlo.hpp"
#include "hw2f/swap.hpp"

namespace hw2f {

struct NettingSet {
    std::vector<SwapSpec> swaps;

    void validate() const;
};

/// Sum over swaps of sign * notional * A(t) * (S(t) - K) with annuity and
/// par rate taken from reconstructed bonds at the state.
double portfolio_value(const DiscountCurve& curve, const Hw2fParams& params,
                       const FactorState& state, const NettingSet& set);

struct EpeEstimate {
    double epe;
    double std_error;
};

/// Time-0 value of the positive exposure at `observation`:
/// D(0,S) * mean(max(V, 0) / D(T_j, S)) over sampled factor states.
EpeEstimate epe(const DiscountCurve& curve, const Hw2fParams& params, const NettingSet& set,
                double observation, const McConfig& config);

/// Gaussian law of W = N_p A_p(0) S_p - N_r A_r(0) S_r with annuities
/// frozen at time 0, and the matching strike k.
struct FrozenSpread {
    double mean;
    double stddev;
    double strike;
};

/// True for exactly one payer and one receiver swap.
bool is_spread_pair(const NettingSet& set);

/// Requires exactly one payer and one receiver swap, both starting at
/// `observation`.
FrozenSpread frozen_spread(const DiscountCurve& curve, const Hw2fParams& params,
                           const NettingSet& set, double observation);

/// E[(W - k)^+] under a normal law; intrinsic value when stddev is zero.
double bachelier_call(double mean, double stddev, double strike);

/// Frozen-annuity spread-option approximation of the exposure.
double spread_option_frozen(const DiscountCurve& curve, const Hw2fParams& params,
                            const NettingSet& set, double observation);

/// Calibration instrument for the variance level of an exposure sweep.
struct LevelTarget {
    SwapSpec instrument;
    double normal_vol;
};

struct ExposureSweepOptions {
    std::optional<LevelTarget> calibration;
    // Rescale the variances at every rho_m so the instrument keeps its
    // target vol; otherwise calibrate once at rho_m = 0 and hold them.
    bool recalibrate_each_point = true;
};

struct ExposurePoint {
    double rho_m;
    double epe;
    double std_error;
    double closed_form;
};

std::vector<ExposurePoint> exposure_vs_rho_curve(const DiscountCurve& curve,
                                                 const Hw2fParams& params, const NettingSet& set,
                                                 double observation,
                                                 std::span<const double> rho_grid,
                                                 const McConfig& config,
                                                 const ExposureSweepOptions& options = {});

/// Model parameters used at one point of exposure_vs_rho_curve.
Hw2fParams sweep_params(const DiscountCurve& curve, const Hw2fParams& params, double observation,
                        double rho_m, const ExposureSweepOptions& options);

void write_exposure_csv(std::span<const ExposurePoint> points, std::ostream& out);
void write_exposure_csv(std::span<const ExposurePoint> points, const std::filesystem::path& path);

struct ExposureProfile {
    std::vector<double> times;
    std::vector<double> epe;
    std::vector<double> std_error;
};

ExposureProfile exposure_profile(const DiscountCurve& curve, const Hw2fParams& params,
                                 const NettingSet& set, std::span<const double> times,
                                 const McConfig& config);

/// Trapezoidal lgd * integral of lambda * EPE(t) dt over the profile grid.
double cva_flat_hazard(const ExposureProfile& profile, double hazard_rate, double lgd = 1.0);

}  // namespace hw2f
