#pragma once

#include <array>
#include <cstdint>

namespace bosegas {

/// Philox4x32-10 counter-based generator (Salmon et al., Random123).
/// 128-bit counter, 64-bit key; stateless, so any (key, counter) pair can be
/// evaluated independently and in any order.
class Philox4x32 {
public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter generate(Counter ctr, Key key) noexcept;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Key for stream `stream` of master seed `seed`.
Philox4x32::Key derive_key(std::uint64_t seed, std::uint64_t stream) noexcept;

/// Two independent standard normals from one Philox block (Box-Muller on two
/// 53-bit uniforms in (0, 1)).
std::array<double, 2> normal_pair(Philox4x32::Key key, std::uint32_t c0, std::uint32_t c1) noexcept;

}  // namespace bosegas
