#ifndef DISSIPSCAT_SOLVER_DOMAIN_HPP
#define DISSIPSCAT_SOLVER_DOMAIN_HPP

#include <vector>

#include "dissipscat/core/types.hpp"

namespace dissipscat::solver {

enum class WallKind { Impedance, Pec };
enum class OuterKind { Absorb, Reflect };

// Discretization of the exterior 1 <= r <= r_max in spherical coordinates
// about a chosen axis: radial nodes include both walls, the polar grid is
// staggered by half a cell so the poles carry no nodes, and azimuthal
// dependence is spectral (complex Fourier modes). Stored modes are the
// m >= 0 representatives of a real field.
struct DomainSpec {
    double r_max = 8.0;
    int n_r = 256;
    int n_theta = 64;
    std::vector<int> modes{0};
    double cfl = 0.45;
    double epsilon = 0.5;      // impedance parameter of the r=1 wall
    WallKind wall = WallKind::Impedance;
    OuterKind outer = OuterKind::Absorb;
    double filter_strength = 0.02; // 4th-difference filter; 0 disables

    // world-frame axis of the polar coordinate (unit); t1/t2 complete the
    // orthonormal triple used for azimuth phase and resampling
    Vec3 axis{1.0, 0.0, 0.0};
};

struct Domain {
    DomainSpec spec;
    double dr = 0.0;
    double dtheta = 0.0;
    double dt = 0.0;
    std::vector<double> r;         // n_r values, r[0] = 1, r[n_r-1] = r_max
    std::vector<double> theta;     // n_theta values (j + 1/2) dtheta
    std::vector<double> sin_theta;
    std::vector<double> cos_theta;
    Vec3 t1{0, 1, 0}, t2{0, 0, 1}; // completes spec.axis to a frame

    Vec3 position(double rr, double th, double phi) const {
        return rr * (std::cos(th) * spec.axis +
                     std::sin(th) * (std::cos(phi) * t1 + std::sin(phi) * t2));
    }
};

// Validates the spec (throws InvalidSpec) and precomputes grid metrics and
// the time step dt = cfl * min(dr, dtheta).
Domain build_domain(const DomainSpec& spec);

// Reflection coefficient of the characteristic wall condition: the incoming
// amplitude equals coeff * outgoing amplitude (per tangential polarization).
// Impedance walls give -eps/(2+eps), the perfect conductor -1.
double wall_reflection_coefficient(WallKind wall, double eps);

// The 2x2 diagonal map on (a,b) polarization amplitudes; kept as a matrix so
// callers can check its operator norm.
struct ReflectionMap {
    double coeff_a = 0.0;
    double coeff_b = 0.0;
    double operator_norm() const {
        return std::max(std::abs(coeff_a), std::abs(coeff_b));
    }
};

ReflectionMap boundary_reflection_map(double eps, WallKind wall = WallKind::Impedance);

} // namespace dissipscat::solver

#endif
