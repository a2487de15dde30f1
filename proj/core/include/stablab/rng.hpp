// SPDX-License-Identifier: MIT
#pragma once

#include <array>
#include <cstdint>

namespace stablab {

/// Philox4x32-10 counter-based generator. A stream is addressed by
/// (seed, stream_id); the i-th output block depends only on (seed, stream_id, i),
/// so per-path substreams are independent of the parallel schedule.
class RngStream {
public:
    using Block = std::array<std::uint32_t, 4>;

    RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept;

    std::uint64_t next_u64() noexcept;
    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform() noexcept;
    /// Standard exponential variate.
    double exponential() noexcept;

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_; }
    std::uint64_t blocks_consumed() const noexcept { return block_; }

    static Block philox(Block counter, std::array<std::uint32_t, 2> key) noexcept;

private:
    void refill() noexcept;

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    Block buffer_{};
    int used_ = 4;
};

}  // namespace stablab
