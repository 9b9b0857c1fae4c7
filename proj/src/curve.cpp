#include "hw2f/curve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hw2f/errors.hpp"

namespace hw2f {

DiscountCurve DiscountCurve::flat(double rate) {
    if (!std::isfinite(rate)) throw ConfigError("flat_rate must be finite");
    DiscountCurve c;
    c.flat_rate_ = rate;
    return c;
}

DiscountCurve DiscountCurve::from_pillars(std::vector<Pillar> pillars, bool non_negative_rates) {
    if (pillars.empty()) throw ConfigError("curve needs at least one pillar");
    // An explicit (0, 1) pillar is allowed and dropped.
    if (pillars.front().time == 0.0) {
        if (std::abs(pillars.front().df - 1.0) > 1e-14)
            throw ConfigError("D(0,0) must equal 1");
        pillars.erase(pillars.begin());
        if (pillars.empty()) throw ConfigError("curve needs a pillar with positive time");
    }
    double prev_t = 0.0, prev_df = 1.0;
    for (const auto& p : pillars) {
        if (!(p.time > prev_t))
            throw ConfigError("pillar times must be positive and strictly increasing");
        if (!(p.df > 0.0) || !std::isfinite(p.df))
            throw ConfigError("pillar discount factors must be positive");
        if (non_negative_rates && p.df > prev_df)
            throw ConfigError("discount factors increase at t=" + std::to_string(p.time) +
                              " on a curve flagged non-negative-rates");
        prev_t = p.time;
        prev_df = p.df;
    }
    DiscountCurve c;
    c.pillars_ = std::move(pillars);
    c.log_dfs_.reserve(c.pillars_.size());
    for (const auto& p : c.pillars_) c.log_dfs_.push_back(std::log(p.df));
    return c;
}

double DiscountCurve::log_discount(double t) const {
    if (t < 0.0) throw DomainError("curve queried at negative time");
    if (pillars_.empty()) return -flat_rate_ * t;
    if (t == 0.0) return 0.0;

    auto it = std::lower_bound(pillars_.begin(), pillars_.end(), t,
                               [](const Pillar& p, double v) { return p.time < v; });
    auto i = static_cast<std::size_t>(it - pillars_.begin());
    if (i < pillars_.size() && pillars_[i].time == t) return log_dfs_[i];

    // Bracketing nodes, with the implied (0, 0) log-node in front.
    double t0, l0, t1, l1;
    if (i == pillars_.size()) {
        // flat-forward extrapolation from the last segment
        t1 = pillars_.back().time;
        l1 = log_dfs_.back();
        if (pillars_.size() == 1) {
            t0 = 0.0;
            l0 = 0.0;
        } else {
            t0 = pillars_[i - 2].time;
            l0 = log_dfs_[i - 2];
        }
    } else {
        t1 = pillars_[i].time;
        l1 = log_dfs_[i];
        t0 = i == 0 ? 0.0 : pillars_[i - 1].time;
        l0 = i == 0 ? 0.0 : log_dfs_[i - 1];
    }
    return l0 + (l1 - l0) * (t - t0) / (t1 - t0);
}

double DiscountCurve::discount(double t) const {
    return std::exp(log_discount(t));
}

}  // namespace hw2f
