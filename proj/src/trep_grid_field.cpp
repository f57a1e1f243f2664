#include "dissipscat/trep/grid_field.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "dissipscat/core/reduce.hpp"

namespace dissipscat::trep {

GridField::GridField(int nx, int ny, int nz, double extent)
    : nx_(nx), ny_(ny), nz_(nz), extent_(extent) {
    for (auto& c : data_) c.assign(nodes(), 0.0);
}

double GridField::sample(int c, const Vec3& p) const {
    const double d = spacing(), h = 0.5 * extent_;
    const double fx = (p.x + h) / d, fy = (p.y + h) / d, fz = (p.z + h) / d;
    const int ix = static_cast<int>(std::floor(fx));
    const int iy = static_cast<int>(std::floor(fy));
    const int iz = static_cast<int>(std::floor(fz));
    if (ix < 0 || iy < 0 || iz < 0 || ix + 1 >= nx_ || iy + 1 >= ny_ || iz + 1 >= nz_)
        return 0.0;
    const double ax = fx - ix, ay = fy - iy, az = fz - iz;
    double v = 0.0;
    for (int dx = 0; dx <= 1; ++dx)
        for (int dy = 0; dy <= 1; ++dy)
            for (int dz = 0; dz <= 1; ++dz) {
                double w = (dx ? ax : 1 - ax) * (dy ? ay : 1 - ay) * (dz ? az : 1 - az);
                v += w * at(c, ix + dx, iy + dy, iz + dz);
            }
    return v;
}

double GridField::support_radius(double reltol) const {
    double peak = 0.0;
    for (const auto& c : data_)
        for (double v : c) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) return 0.0;
    const double thr = reltol * peak;
    double r2max = 0.0;
    for (int ix = 0; ix < nx_; ++ix)
        for (int iy = 0; iy < ny_; ++iy)
            for (int iz = 0; iz < nz_; ++iz) {
                bool live = false;
                for (int c = 0; c < 6 && !live; ++c)
                    live = std::abs(at(c, ix, iy, iz)) > thr;
                if (live) {
                    Vec3 p = node_position(ix, iy, iz);
                    r2max = std::max(r2max, dot(p, p));
                }
            }
    return std::sqrt(r2max);
}

double GridField::l2_norm() const {
    std::vector<double> sq(nodes());
    double total = 0.0;
    for (int c = 0; c < 6; ++c) {
        const auto& v = data_[c];
        for (std::size_t i = 0; i < v.size(); ++i) sq[i] = v[i] * v[i];
        total += tree_sum(sq);
    }
    const double d = spacing();
    return std::sqrt(total * d * d * d);
}

GridField& GridField::operator+=(const GridField& o) {
    for (int c = 0; c < 6; ++c)
        for (std::size_t i = 0; i < data_[c].size(); ++i) data_[c][i] += o.data_[c][i];
    return *this;
}

GridField& GridField::operator*=(double s) {
    for (auto& c : data_)
        for (double& v : c) v *= s;
    return *this;
}

void GridField::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("GridField::save: cannot open " + path.string());
    std::ostringstream head;
    head.precision(17);
    head << nx_ << " " << ny_ << " " << nz_ << " " << extent_ << " components=6 t="
         << time_stamp << "\n";
    out << head.str();
    static_assert(std::endian::native == std::endian::little,
                  "GridField binary format is little endian");
    for (const auto& c : data_)
        out.write(reinterpret_cast<const char*>(c.data()),
                  static_cast<std::streamsize>(c.size() * sizeof(double)));
    if (!out) throw IoError("GridField::save: write failed for " + path.string());
}

GridField GridField::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("GridField::load: cannot open " + path.string());
    std::string header;
    std::getline(in, header);
    std::istringstream hs(header);
    int nx, ny, nz;
    double L;
    std::string comp, tpart;
    if (!(hs >> nx >> ny >> nz >> L >> comp >> tpart) || comp != "components=6" ||
        tpart.rfind("t=", 0) != 0)
        throw IoError("GridField::load: malformed header '" + header + "'");
    GridField g(nx, ny, nz, L);
    g.time_stamp = std::stod(tpart.substr(2));
    for (auto c = 0; c < 6; ++c) {
        in.read(reinterpret_cast<char*>(g.data_[c].data()),
                static_cast<std::streamsize>(g.nodes() * sizeof(double)));
        if (!in) throw IoError("GridField::load: truncated data in " + path.string());
    }
    return g;
}

} // namespace dissipscat::trep
