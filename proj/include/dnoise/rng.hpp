#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace dnoise {

// Deterministic scalar generator. Every Monte Carlo draw in the library goes
// through this class so a seed fixes the sample exactly, independent of
// libstdc++ distribution internals (std::normal_distribution is not pinned
// across implementations; Box-Muller is).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // uniform on (0,1), never returns an endpoint
    double uniform() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    // standard normal via Box-Muller, one spare cached
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925287 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    double exponential() { return -std::log(uniform()); }

    // counting construction: N = #{partial sums of Exp(1) below mean}
    std::uint64_t poisson(double mean) {
        if (mean < 0.0 || !std::isfinite(mean))
            throw std::invalid_argument("poisson: mean must be finite and >= 0");
        if (mean > 1e6)
            throw std::invalid_argument("poisson: mean too large for counting sampler");
        std::uint64_t n = 0;
        double acc = exponential();
        while (acc < mean) {
            acc += exponential();
            ++n;
        }
        return n;
    }

    std::uint64_t raw() { return engine_(); }

  private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// splitmix64 finalizer; decorrelates per-sample streams derived from one seed
inline std::uint64_t split_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t z = base + 0x9E3779B97F4A7C15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace dnoise
