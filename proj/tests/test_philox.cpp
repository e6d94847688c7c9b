#include <doctest.h>

#include <cmath>
#include <set>

#include "bosegas/philox.hpp"

using namespace bosegas;

TEST_CASE("Philox4x32-10 known-answer vectors") {
    using C = Philox4x32::Counter;
    using K = Philox4x32::Key;
    CHECK(Philox4x32::generate(C{0, 0, 0, 0}, K{0, 0}) == C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(Philox4x32::generate(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, K{0xffffffff, 0xffffffff}) ==
          C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(Philox4x32::generate(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, K{0xa4093822, 0x299f31d0}) ==
          C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("derived keys separate streams") {
    std::set<Philox4x32::Key> keys;
    for (std::uint64_t s = 0; s < 50; ++s)
        for (std::uint64_t r = 0; r < 50; ++r) keys.insert(derive_key(s, r));
    CHECK(keys.size() == 2500);
    CHECK(derive_key(42, 7) == derive_key(42, 7));
}

TEST_CASE("normal pairs have unit moments") {
    const auto key = derive_key(2024, 0);
    double s1 = 0.0, s2 = 0.0, s4 = 0.0;
    const int blocks = 200000;
    for (int i = 0; i < blocks; ++i) {
        for (double z : normal_pair(key, static_cast<std::uint32_t>(i), 0)) {
            CHECK_FALSE(!std::isfinite(z));
            s1 += z;
            s2 += z * z;
            s4 += z * z * z * z;
        }
    }
    const double n = 2.0 * blocks;
    CHECK(std::abs(s1 / n) < 5.0 / std::sqrt(n));
    CHECK(std::abs(s2 / n - 1.0) < 5.0 * std::sqrt(2.0 / n));
    CHECK(std::abs(s4 / n - 3.0) < 5.0 * std::sqrt(96.0 / n));
}
