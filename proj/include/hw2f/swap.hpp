#pragma once

#include <span>
#include <vector>

#include "hw2f/curve.hpp"
#include "hw2f/model.hpp"

namespace hw2f {

/// Regular tenor structure T_k = t0 + k * delta, k = 0..n_periods.
struct TenorGrid {
    double t0;
    double delta;
    int n_periods;

    double date(int k) const { return t0 + k * delta; }
    double end() const { return date(n_periods); }
};

enum class Direction { payer, receiver };

/// Fixed-for-floating swap starting at `start` with fixed-leg payments at
/// start + delta, ..., end.
struct SwapSpec {
    double start;
    double end;
    double delta;
    double strike = 0.0;
    Direction direction = Direction::payer;
    double notional = 1.0;

    static SwapSpec on_grid(const TenorGrid& grid, double strike = 0.0,
                            Direction direction = Direction::payer, double notional = 1.0);

    /// Throws ConfigError unless start >= 0, delta > 0, and end - start is
    /// a positive integer multiple of delta.
    void validate() const;

    int periods() const;
    std::vector<double> payment_dates() const;
    double sign() const { return direction == Direction::payer ? 1.0 : -1.0; }
};

/// delta * sum_k D(t, T_k) over the fixed-leg payment dates.
double annuity(const DiscountCurve& curve, const SwapSpec& spec);
double annuity(const DiscountCurve& curve, const Hw2fParams& params, const FactorState& state,
               const SwapSpec& spec);

/// (D(t, start) - D(t, end)) / annuity. Forward par rate at t = 0.
double par_rate(const DiscountCurve& curve, const SwapSpec& spec);
double par_rate(const DiscountCurve& curve, const Hw2fParams& params, const FactorState& state,
                const SwapSpec& spec);

/// Swap rate approximated by the equivalent compounded forward rate:
/// ((D(t,start) / D(t,end))^(delta / (end - start)) - 1) / delta.
double proxy_par_rate(const DiscountCurve& curve, const SwapSpec& spec);
double proxy_par_rate(const DiscountCurve& curve, const Hw2fParams& params,
                      const FactorState& state, const SwapSpec& spec);

/// Sorted set of every date a group of swaps needs (starts and payment
/// dates), with index lookups so that a single vector of discount factors
/// serves all of them.
class CashflowSchedule {
public:
    explicit CashflowSchedule(std::span<const SwapSpec> swaps);

    const std::vector<double>& dates() const noexcept { return dates_; }

    /// Annuity and par rate of swap `i` given dfs[k] = D(t, dates()[k]).
    double annuity(std::size_t i, std::span<const double> dfs) const;
    double par_rate(std::size_t i, std::span<const double> dfs) const;

private:
    struct Layout {
        std::size_t start;
        std::vector<std::size_t> payments;
        double delta;
    };
    std::vector<double> dates_;
    std::vector<Layout> layouts_;
};

}  // namespace hw2f
