#pragma once

#include <cstdint>
#include <random>

#include "geocalib/exterior.hpp"

// Seeded deterministic sampling. Doubles are derived from raw engine words so
// that streams are identical across standard library implementations.

namespace geocalib {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    double gaussian() {
        // Box-Muller; one value per call keeps the stream layout simple.
        double u1 = uniform();
        while (u1 == 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    Vec uniform_vector(int dim, double a, double b) {
        Vec v(dim);
        for (int i = 0; i < dim; ++i) v[i] = uniform(a, b);
        return v;
    }

    Vec gaussian_vector(int dim) {
        Vec v(dim);
        for (int i = 0; i < dim; ++i) v[i] = gaussian();
        return v;
    }

    // Uniform on the unit sphere of R^dim.
    Vec sphere_vector(int dim) {
        Vec v = gaussian_vector(dim);
        while (v.norm() < 1e-12) v = gaussian_vector(dim);
        return v / v.norm();
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace geocalib
