#pragma once

#include <cstdint>
#include <random>

namespace cat0 {

/// Seed record for reproducible sampling: identical (seed, stream) pairs
/// yield identical draw sequences across runs.
struct SampleSeed {
    std::uint64_t seed = 1;
    std::uint64_t stream = 0;

    friend bool operator==(const SampleSeed&, const SampleSeed&) = default;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Deterministic generator. std::mt19937_64 output is fully specified by the
/// standard; the double conversions below avoid std::*_distribution, whose
/// draw sequences are implementation-defined.
class Rng {
public:
    explicit Rng(SampleSeed s)
        : engine_(splitmix64(s.seed ^ splitmix64(s.stream + 0x6a09e667f3bcc909ULL))) {}

    Rng(std::uint64_t seed, std::uint64_t stream) : Rng(SampleSeed{seed, stream}) {}

    /// Uniform in [0, 1).
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal via Box-Muller (deterministic draw order).
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        while (u1 == 0.0) u1 = uniform01();
        const double u2 = uniform01();
        const double mag = std::sqrt(-2.0 * std::log(u1));
        const double two_pi = 6.283185307179586476925286766559;
        spare_ = mag * std::sin(two_pi * u2);
        have_spare_ = true;
        return mag * std::cos(two_pi * u2);
    }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        return static_cast<std::uint64_t>(uniform01() * static_cast<double>(n)) % n;
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace cat0
