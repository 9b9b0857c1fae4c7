#include "hw2f/exposure.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>

#include "hw2f/csv.hpp"
#include "hw2f/errors.hpp"
#include "hw2f/swap_analytics.hpp"

namespace hw2f {

void NettingSet::validate() const {
    if (swaps.empty()) throw ConfigError("netting set is empty");
    for (const auto& s : swaps) s.validate();
}

double portfolio_value(const DiscountCurve& curve, const Hw2fParams& params,
                       const FactorState& state, const NettingSet& set) {
    set.validate();
    double v = 0.0;
    for (const auto& s : set.swaps)
        v += s.sign() * s.notional * annuity(curve, params, state, s) *
             (par_rate(curve, params, state, s) - s.strike);
    return v;
}

EpeEstimate epe(const DiscountCurve& curve, const Hw2fParams& params, const NettingSet& set,
                double observation, const McConfig& config) {
    set.validate();
    const double S = params.numeraire_maturity();
    if (observation > S) throw ConfigError("exposure date after numeraire maturity");
    for (const auto& s : set.swaps)
        if (observation > s.start + s.delta + 1e-9)
            throw DomainError("exposure date is after a swap's first payment");
    if (config.n_paths < 2) throw ConfigError("EPE needs at least two paths");

    const CashflowSchedule schedule(set.swaps);
    std::vector<double> dates = schedule.dates();
    dates.push_back(S);
    const BondReconstructor bonds(curve, params, observation, dates);
    const auto states = sample_factors(params, observation, config);

    std::vector<double> payoff(states.size());
    parallel_for(states.size(), config.threads, [&](std::size_t begin, std::size_t end) {
        std::vector<double> dfs(dates.size());
        for (std::size_t i = begin; i < end; ++i) {
            bonds.discount_factors(states[i].x1, states[i].x2, dfs);
            double v = 0.0;
            for (std::size_t k = 0; k < set.swaps.size(); ++k) {
                const auto& s = set.swaps[k];
                v += s.sign() * s.notional * schedule.annuity(k, dfs) *
                     (schedule.par_rate(k, dfs) - s.strike);
            }
            payoff[i] = std::max(v, 0.0) / dfs.back();
        }
    });

    const double n = static_cast<double>(payoff.size());
    double mean = 0.0;
    for (double p : payoff) mean += p;
    mean /= n;
    double ss = 0.0;
    for (double p : payoff) ss += (p - mean) * (p - mean);
    const double sd = std::sqrt(ss / (n - 1.0));
    const double d0s = curve.discount(S);
    return {d0s * mean, d0s * sd / std::sqrt(n)};
}

FrozenSpread frozen_spread(const DiscountCurve& curve, const Hw2fParams& params,
                           const NettingSet& set, double observation) {
    set.validate();
    if (set.swaps.size() != 2) throw ConfigError("spread option needs exactly two swaps");
    const auto payer_it = std::find_if(set.swaps.begin(), set.swaps.end(),
                                       [](const SwapSpec& s) { return s.direction == Direction::payer; });
    const auto recv_it = std::find_if(set.swaps.begin(), set.swaps.end(),
                                      [](const SwapSpec& s) { return s.direction == Direction::receiver; });
    if (payer_it == set.swaps.end() || recv_it == set.swaps.end())
        throw ConfigError("spread option needs one payer and one receiver swap");
    const SwapSpec& p = *payer_it;
    const SwapSpec& r = *recv_it;

    const double cp = p.notional * annuity(curve, p);
    const double cr = r.notional * annuity(curve, r);
    const double var = cp * cp * swap_covariance(params, observation, p, p, curve) +
                       cr * cr * swap_covariance(params, observation, r, r, curve) -
                       2.0 * cp * cr * swap_covariance(params, observation, p, r, curve);
    return {cp * proxy_par_rate(curve, p) - cr * proxy_par_rate(curve, r),
            std::sqrt(std::max(var, 0.0)), cp * p.strike - cr * r.strike};
}

bool is_spread_pair(const NettingSet& set) {
    return set.swaps.size() == 2 && set.swaps[0].direction != set.swaps[1].direction;
}

double bachelier_call(double mean, double stddev, double strike) {
    const double m = mean - strike;
    if (stddev <= 0.0) return std::max(m, 0.0);
    const double d = m / stddev;
    const double cdf = 0.5 * std::erfc(-d / std::numbers::sqrt2);
    const double pdf = std::exp(-0.5 * d * d) / std::sqrt(2.0 * std::numbers::pi);
    return m * cdf + stddev * pdf;
}

double spread_option_frozen(const DiscountCurve& curve, const Hw2fParams& params,
                            const NettingSet& set, double observation) {
    const auto w = frozen_spread(curve, params, set, observation);
    return bachelier_call(w.mean, w.stddev, w.strike);
}

Hw2fParams sweep_params(const DiscountCurve& curve, const Hw2fParams& params, double observation,
                        double rho_m, const ExposureSweepOptions& options) {
    if (!options.calibration) return with_terminal_rho(params, observation, rho_m);
    const auto& target = *options.calibration;
    auto calibrate = [&](const Hw2fParams& p) {
        return calibrate_level(p, target.instrument.start, target.instrument, curve,
                               target.normal_vol)
            .params;
    };
    if (options.recalibrate_each_point)
        return calibrate(with_terminal_rho(params, observation, rho_m));
    return with_terminal_rho(calibrate(with_terminal_rho(params, observation, 0.0)), observation,
                             rho_m);
}

std::vector<ExposurePoint> exposure_vs_rho_curve(const DiscountCurve& curve,
                                                 const Hw2fParams& params, const NettingSet& set,
                                                 double observation,
                                                 std::span<const double> rho_grid,
                                                 const McConfig& config,
                                                 const ExposureSweepOptions& options) {
    std::vector<double> grid(rho_grid.begin(), rho_grid.end());
    std::sort(grid.begin(), grid.end());
    std::vector<ExposurePoint> out;
    out.reserve(grid.size());
    for (double rho : grid) {
        const auto p = sweep_params(curve, params, observation, rho, options);
        const auto e = epe(curve, p, set, observation, config);
        const double closed = is_spread_pair(set)
                                  ? spread_option_frozen(curve, p, set, observation)
                                  : std::numeric_limits<double>::quiet_NaN();
        out.push_back({rho, e.epe, e.std_error, closed});
    }
    return out;
}

void write_exposure_csv(std::span<const ExposurePoint> points, std::ostream& out) {
    out << "rho_m,epe,stderr,closed_form\n";
    for (const auto& p : points)
        out << format_number(p.rho_m) << ',' << format_number(p.epe) << ','
            << format_number(p.std_error) << ',' << format_number(p.closed_form) << '\n';
}

void write_exposure_csv(std::span<const ExposurePoint> points, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(path.string() + ": " + std::strerror(errno));
    write_exposure_csv(points, out);
    out.flush();
    if (!out) throw std::runtime_error(path.string() + ": " + std::strerror(errno));
}

ExposureProfile exposure_profile(const DiscountCurve& curve, const Hw2fParams& params,
                                 const NettingSet& set, std::span<const double> times,
                                 const McConfig& config) {
    ExposureProfile prof;
    for (double t : times) {
        const auto e = epe(curve, params, set, t, config);
        prof.times.push_back(t);
        prof.epe.push_back(e.epe);
        prof.std_error.push_back(e.std_error);
    }
    return prof;
}

double cva_flat_hazard(const ExposureProfile& profile, double hazard_rate, double lgd) {
    if (profile.times.empty()) throw ConfigError("CVA needs a non-empty exposure profile");
    if (profile.times.size() != profile.epe.size())
        throw ConfigError("exposure profile arrays differ in length");
    if (!(hazard_rate >= 0.0)) throw DomainError("hazard rate must be non-negative");
    if (!(lgd >= 0.0)) throw DomainError("loss given default must be non-negative");
    double integral = 0.0;
    for (std::size_t i = 0; i + 1 < profile.times.size(); ++i) {
        const double dt = profile.times[i + 1] - profile.times[i];
        if (!(dt > 0.0)) throw ConfigError("exposure profile times must be increasing");
        integral += 0.5 * dt * (profile.epe[i] + profile.epe[i + 1]);
    }
    return lgd * hazard_rate * integral;
}

}  // namespace hw2f
