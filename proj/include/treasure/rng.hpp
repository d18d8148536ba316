#pragma once

#include <cstdint>

namespace treasure {

// splitmix64; used to expand user seeds into independent stream seeds.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256** by Blackman & Vigna. Cheap to construct, so we can afford one
// independent stream per (trial, player) and keep simulations reproducible
// regardless of how trials are scheduled.
class Rng {
  public:
    using result_type = uint64_t;

    explicit Rng(uint64_t seed) {
        uint64_t sm = seed;
        for (auto& word : s_) word = splitmix64(sm);
    }

    // Stream for a given player within a given trial: the player index is
    // spread over the word and xor-ed into the seed, then the trial index is
    // folded in. Player index 0 is reserved for the environment (treasure
    // placement).
    static Rng stream(uint64_t seed, uint64_t trial, uint64_t player) {
        uint64_t sm = seed ^ (player * 0x9e3779b97f4a7c15ULL);
        return Rng(splitmix64(sm) ^ (trial + 0x632be59bd9b4e019ULL));
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~0ULL; }

    result_type operator()() {
        const uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform double in [0, 1).
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    uint64_t s_[4];
};

}  // namespace treasure
