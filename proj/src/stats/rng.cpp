#include "tslab/stats/rng.hpp"

namespace tslab::stats {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

}  // namespace

std::uint64_t mix64(std::uint64_t x) noexcept {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
    // Key the SplitMix64 sequence on both halves of the identity; the
    // stream id passes through its own mixer so adjacent ids diverge.
    std::uint64_t sm = mix64(seed + kGolden) ^ rotl(mix64(stream_id ^ 0xD1B54A32D192ED03ULL), 23);
    for (auto& word : state_) {
        sm += kGolden;
        word = mix64(sm);
    }
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = kGolden;
}

RngStream::result_type RngStream::operator()() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

std::uint64_t RngStream::uniform_index(std::uint64_t n) noexcept {
    // Lemire's nearly-divisionless rejection method.
    std::uint64_t x = (*this)();
    __uint128_t m = static_cast<__uint128_t>(x) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
        const std::uint64_t threshold = (0 - n) % n;
        while (low < threshold) {
            x = (*this)();
            m = static_cast<__uint128_t>(x) * n;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

RngStream RngStream::split(std::uint64_t child_id) const {
    return RngStream(mix64(seed_ ^ rotl(mix64(stream_id_ + kGolden), 31)), child_id);
}

}  // namespace tslab::stats
