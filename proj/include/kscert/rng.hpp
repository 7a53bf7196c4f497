#pragma once

#include <cmath>
#include <cstdint>

namespace kscert {

// SplitMix64 (Steele, Lea & Flood; the java.util.SplittableRandom mixer).
// 64-bit counter advanced by the golden-ratio increment, output whitened
// by the murmur-style finalizer. Chosen because substreams are derived in
// O(1) from (seed, index), so parallel and serial runs of the trial loop
// produce bit-identical records.
inline std::uint64_t splitmix64_mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

class SplitMix64 {
public:
    static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    // Independent substream for one trial: state = mix(seed + golden*(index+1)).
    static SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
        return SplitMix64(splitmix64_mix(seed + kGolden * (index + 1)));
    }

    std::uint64_t next_u64() {
        state_ += kGolden;
        return splitmix64_mix(state_);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n) via 128-bit multiply-shift.
    std::uint64_t next_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    // Standard normal pair, Box-Muller on (0,1] x [0,1) uniforms.
    void next_gaussian_pair(double& g0, double& g1) {
        double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
        double u2 = next_unit();
        double r = std::sqrt(-2.0 * std::log(u1));
        double t = 6.283185307179586476925286766559 * u2;
        g0 = r * std::cos(t);
        g1 = r * std::sin(t);
    }

private:
    std::uint64_t state_;
};

}  // namespace kscert
