// Deterministic, stream-splittable randomness.
//
// Every stochastic routine takes an explicit RngStream.  A stream is a
// deterministic function of (seed, stream index), so parallel consumers and
// re-runs see bitwise-identical draws.  Gaussian variates use our own polar
// method rather than std::normal_distribution, whose output is
// implementation-defined.

#ifndef MOMAP_RNG_HPP
#define MOMAP_RNG_HPP

#include "momap/rational.hpp"

#include <cmath>
#include <cstdint>
#include <random>

namespace momap {

class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream) : eng_(mix(seed, stream)) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    long long uniform_int(long long lo, long long hi) {  // inclusive range
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        // Rejection sampling keeps the draw unbiased and deterministic.
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return lo + static_cast<long long>(x % span);
    }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = uniform(-1.0, 1.0);
            v = uniform(-1.0, 1.0);
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

    // Small-integer rational: numerator uniform in [-range, range], fixed denominator.
    Rat small_rational(long long range, long long den = 1) {
        return Rat(uniform_int(-range, range)) / Rat(den);
    }

    // Nonzero variant (resamples zero numerators).
    Rat small_rational_nonzero(long long range, long long den = 1) {
        long long num;
        do {
            num = uniform_int(-range, range);
        } while (num == 0);
        return Rat(num) / Rat(den);
    }

    GaussRat small_gauss_rational(long long range, long long den = 1) {
        return {small_rational(range, den), small_rational(range, den)};
    }

  private:
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
        // splitmix64 finalizer over the pair
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace momap

#endif  // MOMAP_RNG_HPP
