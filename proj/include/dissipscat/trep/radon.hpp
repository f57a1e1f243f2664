#ifndef DISSIPSCAT_TREP_RADON_HPP
#define DISSIPSCAT_TREP_RADON_HPP

#include <span>
#include <vector>

#include "dissipscat/core/parallel.hpp"
#include "dissipscat/trep/grid_field.hpp"

namespace dissipscat::trep {

// Uniform s-grid, symmetric about 0 when count is odd.
struct SGrid {
    double s0 = 0.0;
    double ds = 0.0;
    int count = 0;
    double s(int i) const { return s0 + i * ds; }

    // symmetric grid covering [-smax, smax] with spacing close to ds_hint
    static SGrid symmetric(double smax, double ds_hint);
};

// Margin (in grid spacings) that the declared support must keep from the box
// boundary for plane integrals and spectral evolution to be trusted. Values
// below kSupportTol * peak do not count as support.
inline constexpr double kSupportMargin = 4.0;
inline constexpr double kSupportTol = 1e-9;

void require_support_margin(const GridField& g, double extra = 0.0);

// Plane integrals of one component over the planes <x,omega> = s, by a plane
// mesh of the grid spacing and trilinear interpolation. O(delta^2) for smooth
// fields.
std::vector<double> radon_transform(const GridField& g, int component, const Vec3& omega,
                                    const SGrid& sgrid, Exec exec = Exec::Parallel);

// All six components at once (shared interpolation weights); layout
// out[is*6 + c].
std::vector<double> radon_all_components(const GridField& g, const Vec3& omega,
                                         const SGrid& sgrid, Exec exec = Exec::Parallel);

namespace reference {
// Straightforward full-square plane mesh, serial; kept as the slow reference
// for the optimized kernel above.
std::vector<double> radon_transform(const GridField& g, int component, const Vec3& omega,
                                    const SGrid& sgrid);
} // namespace reference

} // namespace dissipscat::trep

#endif
