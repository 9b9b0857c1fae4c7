#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "hw2f/curve.hpp"
#include "hw2f/model.hpp"
#include "hw2f/swap.hpp"

namespace hw2f {

struct McConfig {
    std::size_t n_paths = 1000;
    std::uint64_t seed = 42;
    unsigned threads = 0;  // 0: hardware concurrency
};

/// Calls body(begin, end) over disjoint chunks of [0, n). Chunks write to
/// disjoint outputs; any reduction happens afterwards in index order.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t, std::size_t)>& body);

/// Exact draws of (X1(T), X2(T)) ~ N(0, [[xi1, xi12], [xi12, xi2]]).
/// Path i uses Philox stream i under `seed`.
std::vector<FactorState> sample_factors(const Hw2fParams& params, double observation,
                                        const McConfig& config);

/// Sample Pearson correlation. Throws DegenerateError for constant series
/// and ConfigError for mismatched or too-short inputs.
double pearson(std::span<const double> xs, std::span<const double> ys);

/// Approximate standard error of a sample correlation,
/// (1 - r^2) / sqrt(n - 3) from the Fisher z transform.
double correlation_std_error(double r, std::size_t n);

struct McResult {
    double rho_m;
    std::uint64_t seed;
    std::vector<double> short_rates;
    std::vector<double> long_rates;
    double correlation;
    double std_error;
};

/// Terminal par rates of two co-initial swaps from fully reconstructed
/// bonds on each sampled path, and their empirical correlation.
McResult simulate_swap_pair(const DiscountCurve& curve, const Hw2fParams& params,
                            const SwapSpec& short_swap, const SwapSpec& long_swap,
                            const McConfig& config);

/// Scatter data: '#' comment lines with rho_m, empirical correlation,
/// seed and path count, then "path_index,short_rate,long_rate" rows.
void write_scatter_csv(const McResult& result, std::ostream& out);
void write_scatter_csv(const McResult& result, const std::filesystem::path& path);

}  // namespace hw2f
