// SPDX-License-Identifier: MIT
#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

#include "stablab/rng.hpp"
#include "stablab/stats.hpp"

using stablab::RngStream;

// Known-answer vectors of the reference Philox4x32-10 implementation.
TEST(Philox, KnownAnswerZero) {
    const auto out = RngStream::philox({0, 0, 0, 0}, {0, 0});
    EXPECT_EQ(out[0], 0x6627e8d5u);
    EXPECT_EQ(out[1], 0xe169c58du);
    EXPECT_EQ(out[2], 0xbc57ac4cu);
    EXPECT_EQ(out[3], 0x9b00dbd8u);
}

TEST(Philox, KnownAnswerOnes) {
    const auto out = RngStream::philox({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
    EXPECT_EQ(out[0], 0x408f276du);
    EXPECT_EQ(out[1], 0x41c83b0eu);
    EXPECT_EQ(out[2], 0xa20bc7c6u);
    EXPECT_EQ(out[3], 0x6d5451fdu);
}

TEST(Philox, KnownAnswerPi) {
    const auto out = RngStream::philox({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u});
    EXPECT_EQ(out[0], 0xd16cfe09u);
    EXPECT_EQ(out[1], 0x94fdccebu);
    EXPECT_EQ(out[2], 0x5001e420u);
    EXPECT_EQ(out[3], 0x24126ea1u);
}

TEST(RngStream, SameAddressSameSequence) {
    RngStream a(42, 7), b(42, 7);
    for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
}

TEST(RngStream, DistinctStreamsDiffer) {
    std::set<std::uint64_t> firsts;
    for (std::uint64_t s = 0; s < 1000; ++s) firsts.insert(RngStream(1, s).next_u64());
    EXPECT_EQ(firsts.size(), 1000u);
    EXPECT_NE(RngStream(1, 0).next_u64(), RngStream(2, 0).next_u64());
}

TEST(RngStream, UniformOpenInterval) {
    RngStream r(3, 0);
    std::vector<double> v(200000);
    for (auto& x : v) {
        x = r.uniform();
        ASSERT_GT(x, 0.0);
        ASSERT_LT(x, 1.0);
    }
    const auto m = stablab::mean_estimate(v);
    EXPECT_NEAR(m.mean, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / v.size()));
}

TEST(RngStream, ExponentialMean) {
    RngStream r(4, 0);
    std::vector<double> v(200000);
    for (auto& x : v) x = r.exponential();
    const auto m = stablab::mean_estimate(v);
    EXPECT_NEAR(m.mean, 1.0, 4.0 * m.std_error);
}

TEST(RngStream, BlocksCounted) {
    RngStream r(5, 0);
    EXPECT_EQ(r.blocks_consumed(), 0u);
    r.next_u64();
    r.next_u64();
    EXPECT_EQ(r.blocks_consumed(), 1u);
    r.next_u64();
    EXPECT_EQ(r.blocks_consumed(), 2u);
}
