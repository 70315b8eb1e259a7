#pragma once

#include <array>
#include <cstdint>
#include <limits>

#include <boost/random/exponential_distribution.hpp>
#include <boost/random/normal_distribution.hpp>

namespace ptlab {

// Philox4x32-10 block function. Used as a keyed hash from
// (seed, stream coordinates) to generator state.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key);

// Stream coordinates. Any two distinct (seed, chain, replica, purpose)
// tuples give unrelated generators, independent of thread layout.
struct RngSeed {
    std::uint64_t master = 0;
    std::uint32_t chain = 0;
    std::uint32_t replica = 0;
    std::uint32_t purpose = 0;
};

// xoshiro256** whose 256-bit state is produced by two Philox blocks
// evaluated at the stream coordinates.
class Rng {
public:
    using result_type = std::uint64_t;

    Rng() : Rng(RngSeed{}) {}
    explicit Rng(const RngSeed& s);
    Rng(std::uint64_t master, std::uint32_t chain, std::uint32_t replica,
        std::uint32_t purpose = 0)
        : Rng(RngSeed{master, chain, replica, purpose}) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        const std::uint64_t out = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return out;
    }

    // Uniform on (0,1); never returns 0 or 1.
    double uniform() { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }
    double normal() { return normal_(*this); }
    double exponential(double rate) { return exp_(*this) / rate; }
    std::uint64_t below(std::uint64_t n);
    bool bernoulli(double p) { return uniform() < p; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::array<std::uint64_t, 4> s_{};
    boost::random::normal_distribution<double> normal_{};
    boost::random::exponential_distribution<double> exp_{};
};

}  // namespace ptlab
