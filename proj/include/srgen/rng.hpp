// rng.hpp - seeded random stream with portable sampling helpers
#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace srgen {

// Every stochastic decision in the tool flows through this wrapper. The
// standard <random> distributions are implementation-defined, so sampling
// is done by hand; runs with equal seeds reproduce bit-for-bit across
// compilers and platforms.
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t next_u64() { return engine_(); }

    // Uniform integer in [lo, hi], both inclusive.
    int64_t uniform_int(int64_t lo, int64_t hi) {
        uint64_t span = static_cast<uint64_t>(hi - lo) + 1u;
        return lo + static_cast<int64_t>(next_u64() % span);
    }

    // Uniform index in [0, n). n must be positive.
    size_t index(size_t n) { return static_cast<size_t>(next_u64() % n); }

    // Uniform real in [0, 1).
    double real01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform_real(double lo, double hi) { return lo + (hi - lo) * real01(); }

    bool chance(double p) { return real01() < p; }

    // Standard normal deviate (Box-Muller, fixed two-draw order).
    double gaussian() {
        double u1 = real01();
        double u2 = real01();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(6.283185307179586476925286766559 * u2);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace srgen
