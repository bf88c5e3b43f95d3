#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace dlab {

// Counter-based generator: draw n of stream (seed, stream) is
// splitmix64_mix(seed ^ mix(stream) + (n+1) * 0x9E3779B97F4A7C15).
// Any language can reproduce a draw from (seed, stream, n) alone.
inline std::uint64_t splitmix64_mix(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(seed ^ splitmix64_mix(stream + 0x632BE59BD9B4E019ULL)) {}

    std::uint64_t at(std::uint64_t n) const
    {
        return splitmix64_mix(key_ + (n + 1) * 0x9E3779B97F4A7C15ULL);
    }
    std::uint64_t next() { return at(counter_++); }

    // uniform in [0,1)
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // Box-Muller, one draw per call (the second variate is discarded)
    double normal()
    {
        double u1 = 1.0 - uniform();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace dlab
