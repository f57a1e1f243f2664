#ifndef DISSIPSCAT_TREP_GRID_FIELD_HPP
#define DISSIPSCAT_TREP_GRID_FIELD_HPP

#include <cstddef>
#include <filesystem>
#include <vector>

#include "dissipscat/core/types.hpp"

namespace dissipscat::trep {

// Uniform periodic Cartesian grid on the cube [-L/2, L/2)^3 with six real
// components per node. Node i maps to -L/2 + i*delta, delta = L/n. Storage is
// component-major, z fastest:  data[c][ (ix*ny + iy)*nz + iz ].
class GridField {
public:
    GridField() = default;
    GridField(int nx, int ny, int nz, double extent);

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    int nz() const { return nz_; }
    double extent() const { return extent_; }
    double spacing() const { return extent_ / nx_; }
    double time_stamp = 0.0;

    std::size_t nodes() const { return static_cast<std::size_t>(nx_) * ny_ * nz_; }

    double& at(int c, int ix, int iy, int iz) {
        return data_[c][(static_cast<std::size_t>(ix) * ny_ + iy) * nz_ + iz];
    }
    double at(int c, int ix, int iy, int iz) const {
        return data_[c][(static_cast<std::size_t>(ix) * ny_ + iy) * nz_ + iz];
    }

    std::vector<double>& component(int c) { return data_[c]; }
    const std::vector<double>& component(int c) const { return data_[c]; }

    Vec3 node_position(int ix, int iy, int iz) const {
        const double d = spacing(), h = 0.5 * extent_;
        return {ix * d - h, iy * d - h, iz * d - h};
    }

    // Trilinear sample of component c at an arbitrary point; zero outside the
    // grid box.
    double sample(int c, const Vec3& p) const;

    // Largest |x|_2 of any node where some component exceeds
    // reltol * max|field|; used for the support-margin checks.
    double support_radius(double reltol = 1e-12) const;

    double l2_norm() const; // sqrt( sum |u|^2 * delta^3 ), fixed order

    GridField& operator+=(const GridField& o);
    GridField& operator*=(double s);

    // Binary format: one ASCII header line
    //   nx ny nz L components=6 t=<time>
    // followed by nx*ny*nz*6 little-endian doubles in storage order.
    void save(const std::filesystem::path& path) const;
    static GridField load(const std::filesystem::path& path);

private:
    int nx_ = 0, ny_ = 0, nz_ = 0;
    double extent_ = 0.0;
    std::vector<double> data_[6];
};

// Fill a grid from an analytic field; the callback returns the six components
// for a position. Parallel over x-slabs, bitwise independent of scheduling.
template <class F>
GridField fill_grid(int n, double extent, F&& field) {
    GridField g(n, n, n, extent);
    for (int c = 0; c < 6; ++c) g.component(c).assign(g.nodes(), 0.0);
    #pragma omp parallel for schedule(static)
    for (int ix = 0; ix < n; ++ix) {
        for (int iy = 0; iy < n; ++iy)
            for (int iz = 0; iz < n; ++iz) {
                auto v = field(g.node_position(ix, iy, iz));
                for (int c = 0; c < 6; ++c) g.at(c, ix, iy, iz) = v[c];
            }
    }
    return g;
}

} // namespace dissipscat::trep

#endif
