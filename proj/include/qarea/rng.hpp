#pragma once

#include <array>
#include <cstdint>

namespace qarea {

// One keyed block of the Philox4x64 bijection, 10 rounds. Exposed so the
// tests can pin known-answer vectors independently of the stream wrapper.
std::array<std::uint64_t, 4> philox4x64_10(std::array<std::uint64_t, 4> counter,
                                           std::array<std::uint64_t, 2> key);

// Counter-based stream: key = (seed, stream_index), 256-bit block counter.
// Distinct stream indices give statistically independent streams under the
// same seed, and any (seed, stream, draw-count) triple replays exactly.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream_index);

    std::uint64_t next_u64();

    // Strictly inside (0,1): ((x >> 11) + 0.5) * 2^-53.
    double uniform01();

    // Standard normal via Box-Muller; the paired draw is cached.
    double normal();
    double normal(double mean, double sd);

    // Inverse-CDF exponential, -ln(U)/rate.
    double exponential(double rate);

    std::uint64_t seed() const { return key_[0]; }
    std::uint64_t stream_index() const { return key_[1]; }

private:
    void refill();

    std::array<std::uint64_t, 2> key_;
    std::array<std::uint64_t, 4> counter_;
    std::array<std::uint64_t, 4> buffer_;
    unsigned buffer_pos_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace qarea
