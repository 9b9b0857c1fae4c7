#include <doctest.h>

#include <cmath>
#include <sstream>

#include "hw2f/errors.hpp"
#include "hw2f/monte_carlo.hpp"
#include "hw2f/philox.hpp"
#include "hw2f/swap_analytics.hpp"

using namespace hw2f;

TEST_CASE("Philox4x32-10 known-answer vectors") {
    using B = Philox4x32::Block;
    CHECK(Philox4x32::generate({0, 0, 0, 0}, {0, 0}) == B{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(Philox4x32::generate({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
          B{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(Philox4x32::generate({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          B{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("normal pairs are a pure function of (seed, stream)") {
    CHECK(normal_pair(42, 7) == normal_pair(42, 7));
    CHECK(normal_pair(42, 7) != normal_pair(42, 8));
    CHECK(normal_pair(42, 7) != normal_pair(43, 7));
    double s = 0.0, s2 = 0.0;
    const int n = 200000;
    for (int i = 0; i < n / 2; ++i) {
        const auto [a, b] = normal_pair(1, static_cast<std::uint64_t>(i));
        s += a + b;
        s2 += a * a + b * b;
    }
    CHECK(std::abs(s / n) < 4.0 / std::sqrt(n));
    CHECK(std::abs(s2 / n - 1.0) < 4.0 * std::sqrt(2.0 / n));
}

TEST_CASE("pearson correlation") {
    const std::vector<double> x = {1, 2, 3, 4, 5}, y = {2, 4, 5, 4, 5};
    CHECK(pearson(x, y) == doctest::Approx(6.0 / std::sqrt(60.0)).epsilon(1e-15));
    const std::vector<double> flat = {3, 3, 3, 3, 3};
    CHECK_THROWS_AS(pearson(x, flat), DegenerateError);
    // Values equal up to rounding are still constant.
    const std::vector<double> noisy = {0.02, 0.02 + 1e-18, 0.02 - 2e-18, 0.02, 0.02 + 3e-18};
    CHECK_THROWS_AS(pearson(x, noisy), DegenerateError);
    CHECK_THROWS_AS(pearson(x, std::vector<double>{1, 2}), ConfigError);
    CHECK(correlation_std_error(0.5, 103) == doctest::Approx(0.075).epsilon(1e-14));
}

TEST_CASE("factor sampling") {
    const Hw2fParams p(0.1, 0.01, TerminalCovariance{10.0, 4e-4, 3.6e-5, -0.6}, 20.0);
    McConfig one;
    one.n_paths = 50000;
    one.threads = 1;
    McConfig many = one;
    many.threads = 3;
    const auto a = sample_factors(p, 10.0, one);
    const auto b = sample_factors(p, 10.0, many);
    REQUIRE(a.size() == b.size());
    bool same = true;
    for (std::size_t i = 0; i < a.size(); ++i) same = same && a[i].x1 == b[i].x1 && a[i].x2 == b[i].x2;
    CHECK(same);

    std::vector<double> x1, x2;
    for (const auto& s : a) {
        x1.push_back(s.x1);
        x2.push_back(s.x2);
    }
    double v1 = 0.0, v2 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        v1 += x1[i] * x1[i];
        v2 += x2[i] * x2[i];
    }
    const double n = static_cast<double>(a.size());
    CHECK(v1 / n == doctest::Approx(4e-4).epsilon(0.03));
    CHECK(v2 / n == doctest::Approx(3.6e-5).epsilon(0.03));
    CHECK(std::abs(pearson(x1, x2) + 0.6) < 4.0 * correlation_std_error(-0.6, a.size()));
}

TEST_CASE("parallel_for covers every index exactly once") {
    for (unsigned threads : {1u, 2u, 5u}) {
        std::vector<int> hit(1000, 0);
        parallel_for(hit.size(), threads, [&](std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i) ++hit[i];
        });
        CHECK(std::count(hit.begin(), hit.end(), 1) == 1000);
    }
    CHECK_THROWS_AS(parallel_for(1000, 2, [](std::size_t, std::size_t) { throw DomainError("x"); }),
                    DomainError);
}

TEST_CASE("swap pair simulation and scatter output") {
    const auto curve = DiscountCurve::flat(0.02);
    const Hw2fParams p(0.1, 0.01, TerminalCovariance{10.0, 4e-4, 3.6e-5, -0.9}, 20.0);
    const SwapSpec a{10.0, 12.0, 0.25}, b{10.0, 20.0, 0.25};
    McConfig mc;
    mc.n_paths = 5;
    const auto r = simulate_swap_pair(curve, p, a, b, mc);
    CHECK(r.short_rates.size() == 5);
    CHECK(r.seed == 42);
    std::ostringstream out;
    write_scatter_csv(r, out);
    const std::string text = out.str();
    CHECK(text.rfind("# rho_m=-0.9\n", 0) == 0);
    CHECK(text.find("\npath_index,short_rate,long_rate\n0,") != std::string::npos);
    CHECK(std::count(text.begin(), text.end(), '\n') == 4 + 1 + 5);
    CHECK_THROWS(simulate_swap_pair(curve, p, a, SwapSpec{11.0, 20.0, 0.25}, mc));
}
