#include "hw2f/swap.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hw2f/errors.hpp"

namespace hw2f {
namespace {

constexpr double kDateTol = 1e-9;

template <class Discount>
double annuity_with(Discount&& df, const SwapSpec& spec) {
    double sum = 0.0;
    for (int k = 1; k <= spec.periods(); ++k) sum += df(spec.start + k * spec.delta);
    return spec.delta * sum;
}

template <class Discount>
double par_rate_with(Discount&& df, const SwapSpec& spec) {
    return (df(spec.start) - df(spec.end)) / annuity_with(df, spec);
}

template <class Discount>
double proxy_with(Discount&& df, const SwapSpec& spec) {
    const double ratio = df(spec.start) / df(spec.end);
    return std::expm1(spec.delta / (spec.end - spec.start) * std::log(ratio)) / spec.delta;
}

void check_valuation_time(const FactorState& state, const SwapSpec& spec) {
    if (state.t > spec.start + spec.delta + kDateTol)
        throw DomainError("valuation time is after the first payment date");
}

}  // namespace

SwapSpec SwapSpec::on_grid(const TenorGrid& grid, double strike, Direction direction,
                           double notional) {
    SwapSpec s{grid.t0, grid.end(), grid.delta, strike, direction, notional};
    s.validate();
    return s;
}

void SwapSpec::validate() const {
    if (!(start >= 0.0)) throw ConfigError("swap start must be non-negative");
    if (!(delta > 0.0)) throw ConfigError("swap accrual period must be positive");
    if (!(end > start)) throw ConfigError("swap end must be after its start");
    const double n = (end - start) / delta;
    if (std::abs(n - std::round(n)) > 1e-9 * std::max(1.0, n))
        throw ConfigError("swap length " + std::to_string(end - start) +
                          " is not a whole number of periods of " + std::to_string(delta));
    if (!std::isfinite(strike) || !std::isfinite(notional))
        throw ConfigError("swap strike and notional must be finite");
}

int SwapSpec::periods() const {
    return static_cast<int>(std::lround((end - start) / delta));
}

std::vector<double> SwapSpec::payment_dates() const {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(periods()));
    for (int k = 1; k <= periods(); ++k) out.push_back(start + k * delta);
    return out;
}

double annuity(const DiscountCurve& curve, const SwapSpec& spec) {
    spec.validate();
    return annuity_with([&](double T) { return curve.discount(T); }, spec);
}

double annuity(const DiscountCurve& curve, const Hw2fParams& params, const FactorState& state,
               const SwapSpec& spec) {
    spec.validate();
    check_valuation_time(state, spec);
    return annuity_with([&](double T) { return bond(curve, params, state, T); }, spec);
}

double par_rate(const DiscountCurve& curve, const SwapSpec& spec) {
    spec.validate();
    return par_rate_with([&](double T) { return curve.discount(T); }, spec);
}

double par_rate(const DiscountCurve& curve, const Hw2fParams& params, const FactorState& state,
                const SwapSpec& spec) {
    spec.validate();
    check_valuation_time(state, spec);
    return par_rate_with([&](double T) { return bond(curve, params, state, T); }, spec);
}

double proxy_par_rate(const DiscountCurve& curve, const SwapSpec& spec) {
    spec.validate();
    return proxy_with([&](double T) { return curve.discount(T); }, spec);
}

double proxy_par_rate(const DiscountCurve& curve, const Hw2fParams& params,
                      const FactorState& state, const SwapSpec& spec) {
    spec.validate();
    if (std::abs(state.t - spec.start) > kDateTol)
        throw DomainError("proxy swap rate is defined at the swap start only");
    return proxy_with([&](double T) { return bond(curve, params, state, T); }, spec);
}

CashflowSchedule::CashflowSchedule(std::span<const SwapSpec> swaps) {
    for (const auto& s : swaps) {
        s.validate();
        dates_.push_back(s.start);
        for (double d : s.payment_dates()) dates_.push_back(d);
    }
    std::sort(dates_.begin(), dates_.end());
    dates_.erase(std::unique(dates_.begin(), dates_.end(),
                             [](double a, double b) { return std::abs(a - b) <= kDateTol; }),
                 dates_.end());

    auto index_of = [&](double t) {
        auto it = std::lower_bound(dates_.begin(), dates_.end(), t - kDateTol);
        return static_cast<std::size_t>(it - dates_.begin());
    };
    for (const auto& s : swaps) {
        Layout l{index_of(s.start), {}, s.delta};
        for (double d : s.payment_dates()) l.payments.push_back(index_of(d));
        layouts_.push_back(std::move(l));
    }
}

double CashflowSchedule::annuity(std::size_t i, std::span<const double> dfs) const {
    const auto& l = layouts_.at(i);
    double sum = 0.0;
    for (std::size_t k : l.payments) sum += dfs[k];
    return l.delta * sum;
}

double CashflowSchedule::par_rate(std::size_t i, std::span<const double> dfs) const {
    const auto& l = layouts_.at(i);
    return (dfs[l.start] - dfs[l.payments.back()]) / annuity(i, dfs);
}

}  // namespace hw2f
