#ifndef DISSIPSCAT_CORE_RNG_HPP
#define DISSIPSCAT_CORE_RNG_HPP

#include <cstdint>
#include <cmath>

#include "dissipscat/core/types.hpp"

namespace dissipscat {

// Counter-based generator: value = mix(seed, counter). Stateless draws keyed
// by (seed, counter) reproduce bitwise on any platform and allow sampling
// from parallel loops without shared state.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t bits(std::uint64_t counter) const {
        // splitmix64 finalizer applied to a seed/counter combination
        std::uint64_t z = seed_ + 0x9e3779b97f4a7c15ULL * (counter + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0,1)
    double uniform(std::uint64_t counter) const {
        return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
    }

    double uniform(std::uint64_t counter, double lo, double hi) const {
        return lo + (hi - lo) * uniform(counter);
    }

    // standard normal via Box-Muller on two sub-draws of one counter
    double normal(std::uint64_t counter) const {
        double u1 = static_cast<double>(bits(2 * counter) >> 11) * 0x1.0p-53;
        double u2 = static_cast<double>(bits(2 * counter + 1) >> 11) * 0x1.0p-53;
        if (u1 < 1e-300) u1 = 1e-300;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    Vec3 unit_vector(std::uint64_t counter) const {
        Vec3 v{normal(3 * counter), normal(3 * counter + 1), normal(3 * counter + 2)};
        double n = norm(v);
        if (n < 1e-12) return {1.0, 0.0, 0.0};
        return v / n;
    }

    cplx unit_complex(std::uint64_t counter) const {
        double phi = 6.283185307179586476925287 * uniform(counter);
        return {std::cos(phi), std::sin(phi)};
    }

private:
    std::uint64_t seed_;
};

} // namespace dissipscat

#endif
