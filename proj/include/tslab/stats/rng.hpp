#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace tslab::stats {

/// Seeded pseudo-random stream identified by a (seed, stream-id) pair.
///
/// The generator is xoshiro256** with its state expanded from the pair by
/// SplitMix64, so constructing a stream is cheap and any number of
/// independent streams can be derived without coordination. Equal pairs
/// reproduce bit-identical sequences. Satisfies UniformRandomBitGenerator.
class RngStream {
public:
    using result_type = std::uint64_t;

    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept;

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t uniform_index(std::uint64_t n) noexcept;

    /// Child stream keyed by this stream's identity and `child_id`.
    /// Does not advance this stream.
    RngStream split(std::uint64_t child_id) const;

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::array<std::uint64_t, 4> state_;
};

/// SplitMix64 finalizer; a bijective 64-bit mixing function.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace tslab::stats
