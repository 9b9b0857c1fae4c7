#pragma once

#include <vector>

namespace hw2f {

/// (time in years, discount factor)
struct Pillar {
    double time;
    double df;
};

/// Initial term structure D(0, T).
///
/// Either a flat continuously-compounded zero rate, or a set of pillars
/// interpolated linearly in log-discount space (piecewise-constant
/// forwards). Beyond the last pillar the last forward is extended.
class DiscountCurve {
public:
    static DiscountCurve flat(double rate);

    /// Pillars must have strictly increasing positive times and positive
    /// discount factors; (0, 1) is implied. With `non_negative_rates`
    /// the discount factors must also be non-increasing.
    static DiscountCurve from_pillars(std::vector<Pillar> pillars,
                                      bool non_negative_rates = false);

    double discount(double t) const;
    double log_discount(double t) const;

    bool is_flat() const noexcept { return pillars_.empty(); }
    double flat_rate() const noexcept { return flat_rate_; }
    const std::vector<Pillar>& pillars() const noexcept { return pillars_; }

private:
    DiscountCurve() = default;

    double flat_rate_ = 0.0;
    std::vector<Pillar> pillars_;     // excludes the implied (0, 1)
    std::vector<double> log_dfs_;
};

}  // namespace hw2f
