#ifndef DISSIPSCAT_CORE_SPH_HARMONICS_HPP
#define DISSIPSCAT_CORE_SPH_HARMONICS_HPP

#include <cmath>
#include <vector>

#include "dissipscat/core/types.hpp"

namespace dissipscat {

// Real orthonormal spherical harmonics Y_{l,q}, l >= 0, -l <= q <= l,
// normalized so that the integral of Y^2 over the sphere is 1.
inline double real_sph_harmonic(int l, int q, const Vec3& w) {
    const double pi = 3.14159265358979323846;
    const double ct = w.z;
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    const double phi = std::atan2(w.y, w.x);
    const int aq = q < 0 ? -q : q;

    // associated Legendre P_l^aq(ct), no Condon-Shortley phase
    double pqq = 1.0;
    for (int k = 1; k <= aq; ++k) pqq *= (2 * k - 1) * st;
    double p = pqq;          // P_aq^aq
    if (l > aq) {
        double pm1 = pqq;
        double pm0 = ct * (2 * aq + 1) * pqq; // P_{aq+1}^aq
        p = pm0;
        for (int m = aq + 2; m <= l; ++m) {
            double pm = ((2 * m - 1) * ct * pm0 - (m - 1 + aq) * pm1) / (m - aq);
            pm1 = pm0;
            pm0 = pm;
        }
        p = pm0;
    }

    double nrm = (2.0 * l + 1.0) / (4.0 * pi);
    for (int k = l - aq + 1; k <= l + aq; ++k) nrm /= k; // (l-q)!/(l+q)!
    nrm = std::sqrt(nrm);

    if (q == 0) return nrm * p;
    const double sq2 = 1.4142135623730950488;
    if (q > 0) return sq2 * nrm * p * std::cos(aq * phi);
    return sq2 * nrm * p * std::sin(aq * phi);
}

} // namespace dissipscat

#endif
