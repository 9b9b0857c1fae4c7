#include "hw2f/monte_carlo.hpp"

#include <algorithm>
#include <array>
#include <cerrno>
#include <cstring>
#include <limits>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <thread>

#include <fmt/format.h>

#include "hw2f/csv.hpp"
#include "hw2f/errors.hpp"
#include "hw2f/philox.hpp"

namespace hw2f {

void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t, std::size_t)>& body) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t chunks = std::min<std::size_t>(threads, std::max<std::size_t>(n / 256, 1));
    if (chunks <= 1) {
        body(0, n);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(chunks);
        for (std::size_t c = 0; c < chunks; ++c) {
            const std::size_t begin = n * c / chunks;
            const std::size_t end = n * (c + 1) / chunks;
            pool.emplace_back([&, begin, end] {
                try {
                    body(begin, end);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

std::vector<FactorState> sample_factors(const Hw2fParams& params, double observation,
                                        const McConfig& config) {
    if (config.n_paths == 0) throw ConfigError("n_paths must be positive");
    const auto cov = xi_integrals(params, observation);
    if (!(cov.xi1 >= 0.0) || !(cov.xi2 >= 0.0) || !(std::abs(cov.rho_m) <= 1.0))
        throw DegenerateError("factor covariance is not positive semidefinite");

    const double s1 = std::sqrt(cov.xi1);
    const double s2 = std::sqrt(cov.xi2);
    const double rho = cov.rho_m;
    const double orth = std::sqrt((1.0 - rho) * (1.0 + rho));

    std::vector<FactorState> out(config.n_paths);
    parallel_for(config.n_paths, config.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto [z1, z2] = normal_pair(config.seed, i);
            out[i] = {observation, s1 * z1, s2 * (rho * z1 + orth * z2)};
        }
    });
    return out;
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw ConfigError("pearson: series lengths differ");
    if (xs.size() < 2) throw ConfigError("pearson: need at least two observations");
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx, dy = ys[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    // A spread at the level of rounding noise is a constant series.
    auto constant = [n](double ss, double mean) {
        const double noise = 64.0 * std::numeric_limits<double>::epsilon() * std::abs(mean);
        return ss <= n * noise * noise;
    };
    if (constant(sxx, mx) || constant(syy, my))
        throw DegenerateError("correlation of a constant series");
    return std::clamp(sxy / (std::sqrt(sxx) * std::sqrt(syy)), -1.0, 1.0);
}

double correlation_std_error(double r, std::size_t n) {
    if (n <= 3) return std::numeric_limits<double>::infinity();
    return (1.0 - r * r) / std::sqrt(static_cast<double>(n - 3));
}

McResult simulate_swap_pair(const DiscountCurve& curve, const Hw2fParams& params,
                            const SwapSpec& short_swap, const SwapSpec& long_swap,
                            const McConfig& config) {
    const double tn = short_swap.start;
    if (std::abs(long_swap.start - tn) > 1e-9) throw ConfigError("swaps must be co-initial");
    if (tn > params.numeraire_maturity()) throw ConfigError("observation after numeraire maturity");
    if (config.n_paths < 2) throw ConfigError("correlation needs at least two paths");

    const std::array<SwapSpec, 2> swaps{short_swap, long_swap};
    const CashflowSchedule schedule(swaps);
    const BondReconstructor bonds(curve, params, tn, schedule.dates());
    const auto states = sample_factors(params, tn, config);

    McResult r;
    r.rho_m = xi_integrals(params, tn).rho_m;
    r.seed = config.seed;
    r.short_rates.resize(states.size());
    r.long_rates.resize(states.size());
    parallel_for(states.size(), config.threads, [&](std::size_t begin, std::size_t end) {
        std::vector<double> dfs(schedule.dates().size());
        for (std::size_t i = begin; i < end; ++i) {
            bonds.discount_factors(states[i].x1, states[i].x2, dfs);
            r.short_rates[i] = schedule.par_rate(0, dfs);
            r.long_rates[i] = schedule.par_rate(1, dfs);
        }
    });
    r.correlation = pearson(r.short_rates, r.long_rates);
    r.std_error = correlation_std_error(r.correlation, states.size());
    return r;
}

void write_scatter_csv(const McResult& result, std::ostream& out) {
    out << "# rho_m=" << format_number(result.rho_m) << '\n'
        << "# rho_swap=" << format_number(result.correlation) << '\n'
        << "# seed=" << result.seed << '\n'
        << "# n_paths=" << result.short_rates.size() << '\n'
        << "path_index,short_rate,long_rate\n";
    for (std::size_t i = 0; i < result.short_rates.size(); ++i)
        out << i << ',' << format_number(result.short_rates[i]) << ','
            << format_number(result.long_rates[i]) << '\n';
}

void write_scatter_csv(const McResult& result, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(path.string() + ": " + std::strerror(errno));
    write_scatter_csv(result, out);
    out.flush();
    if (!out) throw std::runtime_error(path.string() + ": " + std::strerror(errno));
}

}  // namespace hw2f
