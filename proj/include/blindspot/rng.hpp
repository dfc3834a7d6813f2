#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace blindspot::rng {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace detail

// Counter-seeded xoshiro256++ stream. A stream is fully determined by
// (master_seed, stream_index); distinct indices give independent substreams,
// so parallel consumers never share state.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index) {
        std::uint64_t mix = master_seed;
        (void)detail::splitmix64(mix);
        mix ^= 0xd1b54a32d192ed03ULL * (stream_index + 1);
        for (auto& word : state_) word = detail::splitmix64(mix);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = detail::rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = detail::rotl(state_[3], 45);
        return result;
    }

    // Uniform on [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1]; never returns 0, safe under log().
    double next_double_open() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    // Exact Poisson variate. Knuth's product method below the split
    // threshold; larger means are split additively, which stays exact.
    std::uint64_t next_poisson(double mean) {
        if (!(mean >= 0.0)) throw std::invalid_argument("next_poisson: mean must be >= 0");
        std::uint64_t total = 0;
        while (mean > 30.0) {
            const double half = mean * 0.5;
            total += knuth_poisson(half);
            mean -= half;
        }
        return total + knuth_poisson(mean);
    }

private:
    std::uint64_t knuth_poisson(double mean) {
        if (mean == 0.0) return 0;
        const double limit = std::exp(-mean);
        std::uint64_t k = 0;
        double product = next_double_open();
        while (product > limit) {
            ++k;
            product *= next_double_open();
        }
        return k;
    }

    std::uint64_t state_[4];
};

}  // namespace blindspot::rng
