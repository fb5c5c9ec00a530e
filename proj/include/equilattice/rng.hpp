#pragma once

// Seeded PRNG with a fixed algorithm (xoshiro256++) so that experiment
// outputs are byte-reproducible across runs and thread counts. Standard
// library distributions are avoided on purpose: their output sequences
// are implementation-defined.

#include <cmath>
#include <cstdint>

namespace eql {

struct Rng {
    std::uint64_t s[4];

    explicit Rng(std::uint64_t seed) {
        // splitmix64 expansion of the seed
        std::uint64_t x = seed;
        for (auto& si : s) {
            x += 0x9e3779b97f4a7c15ULL;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            si = z ^ (z >> 31);
        }
    }

    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t next_u64() {
        std::uint64_t result = rotl(s[0] + s[3], 23) + s[0];
        std::uint64_t t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = rotl(s[3], 45);
        return result;
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in [lo, hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // standard normal, Box-Muller (both values used in order)
    double gaussian() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

    // independent sub-stream for block i of a partitioned computation
    Rng substream(std::uint64_t i) const {
        Rng r(s[0] ^ (0xd1342543de82ef95ULL * (i + 1)));
        r.s[1] ^= s[1];
        r.s[2] ^= s[2];
        r.s[3] ^= s[3];
        return r;
    }

  private:
    double cached_ = 0.0;
    bool have_cached_ = false;
};

}  // namespace eql
