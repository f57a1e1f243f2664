#ifndef DISSIPSCAT_CORE_QUADRATURE_HPP
#define DISSIPSCAT_CORE_QUADRATURE_HPP

#include <cmath>
#include <vector>

#include "dissipscat/core/types.hpp"

namespace dissipscat {

struct Quad1D {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Legendre rule on [-1,1], Newton iteration on P_n.
inline Quad1D gauss_legendre(int n) {
    Quad1D q;
    q.nodes.resize(n);
    q.weights.resize(n);
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        q.nodes[i] = -x;
        q.nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        q.weights[i] = w;
        q.weights[n - 1 - i] = w;
    }
    return q;
}

inline Quad1D gauss_legendre(int n, double a, double b) {
    Quad1D q = gauss_legendre(n);
    for (int i = 0; i < n; ++i) {
        q.nodes[i] = 0.5 * (b - a) * q.nodes[i] + 0.5 * (a + b);
        q.weights[i] *= 0.5 * (b - a);
    }
    return q;
}

// Sphere rule: Gauss-Legendre in cos(theta) x uniform azimuth, 2(L+1)^2
// nodes, exact for spherical harmonics through degree 2L+1. The node set is
// symmetric under omega -> -omega; antipode_index gives the matching node.
struct SphereQuad {
    std::vector<Vec3> nodes;
    std::vector<double> weights;      // sum to 4*pi
    std::vector<int> antipode_index;
    int n_polar = 0;
    int n_azimuth = 0;

    std::size_t size() const { return nodes.size(); }
};

inline SphereQuad sphere_quadrature(int L = 16) {
    const double pi = 3.14159265358979323846;
    SphereQuad s;
    s.n_polar = L + 1;
    s.n_azimuth = 2 * (L + 1);
    Quad1D gl = gauss_legendre(s.n_polar);
    s.nodes.reserve(static_cast<std::size_t>(s.n_polar) * s.n_azimuth);
    s.weights.reserve(s.nodes.capacity());
    const double wphi = 2.0 * pi / s.n_azimuth;
    for (int i = 0; i < s.n_polar; ++i) {
        double ct = gl.nodes[i];
        double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
        for (int j = 0; j < s.n_azimuth; ++j) {
            double phi = wphi * j;
            s.nodes.push_back({st * std::cos(phi), st * std::sin(phi), ct});
            s.weights.push_back(gl.weights[i] * wphi);
        }
    }
    // -node(i,j) = node(n_polar-1-i, j + n_azimuth/2): GL nodes are symmetric
    // and the azimuth count is even.
    s.antipode_index.resize(s.size());
    for (int i = 0; i < s.n_polar; ++i)
        for (int j = 0; j < s.n_azimuth; ++j) {
            int ia = s.n_polar - 1 - i;
            int ja = (j + s.n_azimuth / 2) % s.n_azimuth;
            s.antipode_index[i * s.n_azimuth + j] = ia * s.n_azimuth + ja;
        }
    return s;
}

} // namespace dissipscat

#endif
