#pragma once

// Deterministic random-number plumbing for the Monte Carlo modules.
//
// Generator: xoshiro256** (Blackman & Vigna), 256-bit state, output
//   rotl(s1*5, 7)*9, with state seeded by four successive outputs of
//   splitmix64 as the xoshiro authors recommend. Both algorithms implemented
//   verbatim from the published reference code; splitmix64 from state 0
//   reproduces the published test vector (0xE220A8397B1DCDAF, ...).
//
// Seeding contract (the reproducibility foundation): the trajectory with
// index w under master seed S starts splitmix64 at state
//   S XOR ((w+1) * 0x9E3779B97F4A7C15)   (mod 2^64),
// a distinct state for every w since the golden-ratio constant is odd. This
// makes every walk independently reproducible from (S, w) alone — no shared
// stream, so the parallel merge order is irrelevant. Four consecutive
// splitmix64 outputs are never all zero (distinct inputs of a bijective
// finalizer), so the xoshiro state is always valid.
//
// Bounded draws use Lemire's multiply-shift method with the rejection step,
// i.e. exactly uniform over [0, bound) — no modulo bias.

#include <cstdint>

namespace randlink {

inline constexpr const char* kGeneratorId = "xoshiro256** (splitmix64-seeded)";

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// One splitmix64 step from *state: advances the state and returns the output.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += kGolden;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Stateless 64-bit avalanche mix: the output of a single splitmix64 step
// started at x. Used wherever a documented "hash this to a seed" is needed.
inline std::uint64_t mix64(std::uint64_t x) {
    std::uint64_t s = x;
    return splitmix64(s);
}

class Xoshiro256 {
  public:
    explicit Xoshiro256(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : s_) word = splitmix64(sm);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform draw from [0, bound), bound >= 1. Lemire's method: take the
    // high 64 bits of a 128-bit product, rejecting the thin biased band so
    // every residue is exactly equally likely.
    std::uint64_t bounded(std::uint64_t bound) {
        std::uint64_t x = next();
        unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
        std::uint64_t low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                x = next();
                m = static_cast<unsigned __int128>(x) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

// Seed state for trajectory walk_index under master_seed; see the contract
// at the top of the file.
inline std::uint64_t child_seed(std::uint64_t master_seed, std::uint64_t walk_index) {
    return master_seed ^ (kGolden * (walk_index + 1));
}

inline Xoshiro256 walk_generator(std::uint64_t master_seed, std::uint64_t walk_index) {
    return Xoshiro256(child_seed(master_seed, walk_index));
}

}  // namespace randlink
