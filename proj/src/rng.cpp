#include "qarea/rng.hpp"

#include <cmath>

namespace qarea {

namespace {

constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

inline std::uint64_t mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi) {
    unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(p >> 64);
    return static_cast<std::uint64_t>(p);
}

inline void round_once(std::array<std::uint64_t, 4>& c, const std::array<std::uint64_t, 2>& k) {
    std::uint64_t hi0, hi1;
    const std::uint64_t lo0 = mulhilo(kMul0, c[0], hi0);
    const std::uint64_t lo1 = mulhilo(kMul1, c[2], hi1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

std::array<std::uint64_t, 4> philox4x64_10(std::array<std::uint64_t, 4> counter,
                                           std::array<std::uint64_t, 2> key) {
    round_once(counter, key);
    for (int r = 1; r < 10; ++r) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
        round_once(counter, key);
    }
    return counter;
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream_index)
    : key_{seed, stream_index}, counter_{0, 0, 0, 0}, buffer_{}, buffer_pos_(4) {}

void CounterRng::refill() {
    buffer_ = philox4x64_10(counter_, key_);
    buffer_pos_ = 0;
    for (auto& word : counter_) {
        if (++word != 0) break;  // 256-bit increment with carry
    }
}

std::uint64_t CounterRng::next_u64() {
    if (buffer_pos_ >= 4) refill();
    return buffer_[buffer_pos_++];
}

double CounterRng::uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

double CounterRng::normal(double mean, double sd) { return mean + sd * normal(); }

double CounterRng::exponential(double rate) { return -std::log(uniform01()) / rate; }

}  // namespace qarea
