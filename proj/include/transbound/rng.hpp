#ifndef TRANSBOUND_RNG_HPP
#define TRANSBOUND_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace transbound {

// All randomness flows through mt19937_64 plus the helpers below, so a run
// is reproduced bit-for-bit from its seed on any platform. The standard
// distributions are implementation-defined and must not be used here.
using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Independent, deterministic stream for (seed, a, b), used to give each
// epoch/purpose its own generator.
inline Rng make_stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    return Rng(splitmix64(splitmix64(splitmix64(seed) ^ a) ^ b));
}

// Uniform integer in [0, n) via the multiply-shift reduction.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(rng()) * n) >> 64);
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_range(Rng& rng, double lo, double hi) {
    return lo + uniform_unit(rng) * (hi - lo);
}

template <typename T>
void fisher_yates_shuffle(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(uniform_below(rng, i));
        std::swap(v[i - 1], v[j]);
    }
}

} // namespace transbound

#endif
