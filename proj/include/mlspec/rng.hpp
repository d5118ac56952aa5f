#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace mlspec {

// Reproducibility contract: every random draw in the library goes through this
// layer. std::mt19937_64 is bit-exact across conforming implementations, but the
// standard <random> distributions are not, so the distributions here are spelled
// out explicitly:
//   - uniform():  53-bit mantissa draw, (x >> 11) * 2^-53, in [0, 1)
//   - poisson():  Knuth's multiplicative algorithm
//   - normal():   Box-Muller, exactly two uniforms per generated pair
//   - derive_seed(): splitmix64 mixing of (seed, stream), the standard way to
//     split one user seed into independent per-layer / per-restart streams
// Together these make generated instances identical across platforms and easy
// to re-implement in other languages for cross-checking.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(splitmix64(seed) ^ splitmix64(stream * 0x9e3779b97f4a7c15ULL + 1));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // uniform double in [0, 1) with 53 random bits
    double uniform() { return double(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // integer in [0, n); floor of a 53-bit uniform scaled by n (bias ~ n/2^53,
    // negligible at this scale and trivially portable)
    int uniform_int(int n) {
        int v = int(uniform() * double(n));
        return v >= n ? n - 1 : v;
    }

    // Knuth's multiplicative Poisson; fine for the small means used here
    int poisson(double mean) {
        const double limit = std::exp(-mean);
        double p = 1.0;
        int k = 0;
        do {
            ++k;
            p *= uniform();
        } while (p > limit);
        return k - 1;
    }

    // Box-Muller; consumes exactly two uniforms per pair, caches the second value
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        // avoid log(0)
        while (u1 <= 0.0) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace mlspec
