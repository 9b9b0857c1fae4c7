#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace hw2f {

/// Philox4x32-10 counter-based generator (Salmon et al., Random123).
/// Stateless: the output block is a pure function of (counter, key), so
/// each Monte-Carlo path draws from its own counter and results do not
/// depend on how paths are distributed across threads.
class Philox4x32 {
public:
    using Block = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static constexpr Block generate(Block ctr, Key key) {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += kW0;
                key[1] += kW1;
            }
            const std::uint64_t p0 = std::uint64_t{kM0} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{kM1} * ctr[2];
            ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
                   static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
                   static_cast<std::uint32_t>(p0)};
        }
        return ctr;
    }

private:
    static constexpr std::uint32_t kM0 = 0xD2511F53;
    static constexpr std::uint32_t kM1 = 0xCD9E8D57;
    static constexpr std::uint32_t kW0 = 0x9E3779B9;
    static constexpr std::uint32_t kW1 = 0xBB67AE85;
};

/// Two independent standard normals for (seed, stream), via Box-Muller on
/// one Philox block.
inline std::pair<double, double> normal_pair(std::uint64_t seed, std::uint64_t stream) {
    const auto out = Philox4x32::generate(
        {static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32), 0, 0},
        {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)});
    auto unit = [](std::uint32_t lo, std::uint32_t hi) {
        const std::uint64_t bits = (std::uint64_t{hi} << 32 | lo) >> 11;
        return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;  // open interval (0, 1)
    };
    const double u1 = unit(out[0], out[1]);
    const double u2 = unit(out[2], out[3]);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(angle), r * std::sin(angle)};
}

}  // namespace hw2f
