#include "ptlab/rng.hpp"

namespace ptlab {

namespace {

constexpr std::uint32_t kMulA = 0xD2511F53u;
constexpr std::uint32_t kMulB = 0xCD9E8D57u;
constexpr std::uint32_t kWeylA = 0x9E3779B9u;
constexpr std::uint32_t kWeylB = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& lo, std::uint32_t& hi) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    lo = static_cast<std::uint32_t>(p);
    hi = static_cast<std::uint32_t>(p >> 32);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> c,
                                        std::array<std::uint32_t, 2> k) {
    for (int round = 0; round < 10; ++round) {
        std::uint32_t lo0, hi0, lo1, hi1;
        mulhilo(kMulA, c[0], lo0, hi0);
        mulhilo(kMulB, c[2], lo1, hi1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
        k[0] += kWeylA;
        k[1] += kWeylB;
    }
    return c;
}

Rng::Rng(const RngSeed& s) {
    const std::array<std::uint32_t, 2> key{static_cast<std::uint32_t>(s.master),
                                           static_cast<std::uint32_t>(s.master >> 32)};
    for (std::uint32_t block = 0; block < 2; ++block) {
        const auto out = philox4x32({s.chain, s.replica, s.purpose, block}, key);
        s_[2 * block] = (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
        s_[2 * block + 1] = (static_cast<std::uint64_t>(out[2]) << 32) | out[3];
    }
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

std::uint64_t Rng::below(std::uint64_t n) {
    // Lemire's nearly divisionless bounded draw.
    unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
        const std::uint64_t thresh = -n % n;
        while (low < thresh) {
            m = static_cast<unsigned __int128>((*this)()) * n;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace ptlab
