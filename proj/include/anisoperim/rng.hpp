#pragma once

#include <cmath>
#include <cstdint>

#include "anisoperim/core.hpp"

namespace anisoperim {

// Deterministic generator used by every sampled check. std::mt19937 plus the
// standard distributions would be implementation-defined; this keeps sampled
// verdicts reproducible bit-for-bit across runs for a fixed seed.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0,1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * next_double(); }

    // Box-Muller; one deviate per call, cache discarded for simplicity.
    double normal() {
        double u1 = next_double(), u2 = next_double();
        if (u1 < 1e-300) u1 = 1e-300;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    Vec sphere_dir(int dim) {
        Vec v(dim);
        double n2;
        do {
            for (int i = 0; i < dim; ++i) v[i] = normal();
            n2 = v.norm();
        } while (n2 < 1e-12);
        return v / n2;
    }

private:
    uint64_t state_;
};

}  // namespace anisoperim
