#include "dissipscat/trep/translation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dissipscat/core/io.hpp"
#include "dissipscat/core/reduce.hpp"
#include "dissipscat/core/sph_harmonics.hpp"
#include "dissipscat/symbol/eigenframe.hpp"
#include "dissipscat/trep/free_evolve.hpp"

namespace dissipscat::trep {

namespace {
constexpr double kTwoPi = 6.283185307179586476925287;
}

double TRData::norm() const {
    std::vector<double> contrib(values.size());
    const std::size_t nw = sphere.size();
    for (std::size_t i = 0; i < values.size(); ++i)
        contrib[i] = values[i] * values[i] * sphere.weights[i % nw] * sgrid.ds;
    return std::sqrt(tree_sum(contrib));
}

double TRData::mass_fraction_above(double s) const {
    std::vector<double> all(values.size()), above(values.size(), 0.0);
    const std::size_t nw = sphere.size();
    for (std::size_t i = 0; i < values.size(); ++i) {
        const int is = static_cast<int>((i / nw) % sgrid.count);
        const double m = values[i] * values[i] * sphere.weights[i % nw] * sgrid.ds;
        all[i] = m;
        if (sgrid.s(is) > s) above[i] = m;
    }
    const double tot = tree_sum(all);
    if (tot <= 0.0) return 0.0;
    return std::sqrt(tree_sum(above) / tot);
}

double TRData::mass_fraction_below(double s) const {
    std::vector<double> all(values.size()), below(values.size(), 0.0);
    const std::size_t nw = sphere.size();
    for (std::size_t i = 0; i < values.size(); ++i) {
        const int is = static_cast<int>((i / nw) % sgrid.count);
        const double m = values[i] * values[i] * sphere.weights[i % nw] * sgrid.ds;
        all[i] = m;
        if (sgrid.s(is) < s) below[i] = m;
    }
    const double tot = tree_sum(all);
    if (tot <= 0.0) return 0.0;
    return std::sqrt(tree_sum(below) / tot);
}

TRData TRData::shifted(double t) const {
    TRData out = *this;
    const double cells = t / sgrid.ds;
    const long ic = std::lround(cells);
    const std::size_t nw = sphere.size();
    std::fill(out.values.begin(), out.values.end(), 0.0);
    if (std::abs(cells - ic) < 1e-9) {
        for (int j = 0; j < d; ++j)
            for (int is = 0; is < sgrid.count; ++is) {
                const long src = is - ic;
                if (src < 0 || src >= sgrid.count) continue;
                for (std::size_t iw = 0; iw < nw; ++iw)
                    out.value(j, is, static_cast<int>(iw)) =
                        value(j, static_cast<int>(src), static_cast<int>(iw));
            }
    } else {
        // linear interpolation for non grid-aligned shifts
        for (int j = 0; j < d; ++j)
            for (int is = 0; is < sgrid.count; ++is) {
                const double src = is - cells;
                const int i0 = static_cast<int>(std::floor(src));
                const double a = src - i0;
                if (i0 < 0 || i0 + 1 >= sgrid.count) continue;
                for (std::size_t iw = 0; iw < nw; ++iw)
                    out.value(j, is, static_cast<int>(iw)) =
                        (1 - a) * value(j, i0, static_cast<int>(iw)) +
                        a * value(j, i0 + 1, static_cast<int>(iw));
            }
    }
    return out;
}

TRData translation_representation(const GridField& f, int sphere_order, Exec exec,
                                  const SGrid* sgrid_override) {
    require_support_margin(f);
    TRData tr;
    tr.sphere = sphere_quadrature(sphere_order);
    const double smax = f.support_radius(kSupportTol) + 6.0 * f.spacing();
    tr.sgrid = sgrid_override ? *sgrid_override : SGrid::symmetric(smax, f.spacing());
    const std::size_t nw = tr.sphere.size();
    const int ns = tr.sgrid.count;
    tr.values.assign(static_cast<std::size_t>(TRData::d) * ns * nw, 0.0);
    tr.frames.assign(nw * TRData::d * 6, 0.0);

    auto sys = symbol::build_maxwell_system();
    for (std::size_t iw = 0; iw < nw; ++iw) {
        symbol::EigenFrame fr = symbol::eigen_frame(sys, tr.sphere.nodes[iw]);
        for (int j = 0; j < TRData::d; ++j)
            for (int c = 0; c < 6; ++c)
                tr.frames[(iw * TRData::d + j) * 6 + c] = fr.pos_vectors(c, j).real();
    }

    // Plane integrals per node, then projection onto the frame and a
    // 4th-order s-derivative. Parallel over sphere nodes.
    parallel_for(exec, static_cast<std::int64_t>(nw), [&](std::int64_t iw) {
        std::vector<double> plane =
            radon_all_components(f, tr.sphere.nodes[iw], tr.sgrid, Exec::Serial);
        for (int j = 0; j < TRData::d; ++j) {
            const double* rj = tr.frame(j, static_cast<int>(iw));
            std::vector<double> q(ns, 0.0);
            for (int is = 0; is < ns; ++is) {
                double acc = 0.0;
                for (int c = 0; c < 6; ++c) acc += plane[static_cast<std::size_t>(is) * 6 + c] * rj[c];
                q[is] = acc;
            }
            for (int is = 2; is < ns - 2; ++is) {
                const double dq = (q[is - 2] - 8.0 * q[is - 1] + 8.0 * q[is + 1] - q[is + 2]) /
                                  (12.0 * tr.sgrid.ds);
                tr.value(j, is, static_cast<int>(iw)) = dq / kTwoPi;
            }
            // ends: the plane integrals vanish there by the support margin
        }
    });
    return tr;
}

DpmReport dpm_support_test(const TRData& k, DpmSign sign, double rho, double tol, double v0) {
    DpmReport rep;
    const double edge = rho / v0;
    rep.forbidden_fraction = (sign == DpmSign::Plus) ? k.mass_fraction_below(edge)
                                                     : k.mass_fraction_above(-edge);
    rep.member = rep.forbidden_fraction <= tol;
    return rep;
}

double moment_functional(const TRData& k, int a, int kpow, int l, int q, int component) {
    const auto sys = symbol::build_maxwell_system();
    const std::size_t nw = k.sphere.size();
    const int ns = k.sgrid.count;
    std::vector<double> contrib(static_cast<std::size_t>(ns) * nw, 0.0);
    for (int is = 0; is < ns; ++is) {
        const int is_flip = ns - 1 - is; // s -> -s on the symmetric grid
        const double s = k.sgrid.s(is);
        double spow = 1.0;
        for (int i = 0; i < a; ++i) spow *= s;
        for (std::size_t iw = 0; iw < nw; ++iw) {
            const std::size_t iw_anti = k.sphere.antipode_index[iw];
            // V(s,w) - V(-s,-w), the parity combination that recovers the
            // ac-projected derivative data
            double v[6] = {0, 0, 0, 0, 0, 0};
            for (int j = 0; j < TRData::d; ++j) {
                const double kj = k.value(j, is, static_cast<int>(iw));
                const double kj_flip =
                    k.value(j, is_flip, static_cast<int>(iw_anti));
                const double* rj = k.frame(j, static_cast<int>(iw));
                const double* rj_anti = k.frame(j, static_cast<int>(iw_anti));
                for (int c = 0; c < 6; ++c) v[c] += kj * rj[c] - kj_flip * rj_anti[c];
            }
            // apply A(omega)^kpow via the cross-product action
            Vec3 w = k.sphere.nodes[iw];
            for (int p = 0; p < kpow; ++p) {
                Vec3 E{v[0], v[1], v[2]}, B{v[3], v[4], v[5]};
                Vec3 tE = cross(w, B), tB = -1.0 * cross(w, E);
                v[0] = tE.x; v[1] = tE.y; v[2] = tE.z;
                v[3] = tB.x; v[4] = tB.y; v[5] = tB.z;
            }
            contrib[static_cast<std::size_t>(is) * nw + iw] =
                v[component] * spow * real_sph_harmonic(l, q, w) * k.sgrid.ds *
                k.sphere.weights[iw];
        }
    }
    return tree_sum(contrib);
}

MomentBatteryReport moment_battery(const TRData& k, int a_max, int k_max, int l_max) {
    MomentBatteryReport rep;
    rep.norm = k.norm();
    for (int a = 0; a <= a_max; ++a)
        for (int kp = 0; kp <= k_max; ++kp)
            for (int l = a + kp; l <= l_max; ++l)
                for (int q = -l; q <= l; ++q) {
                    double worst = 0.0;
                    int worst_c = 0;
                    for (int c = 0; c < 6; ++c) {
                        double v = moment_functional(k, a, kp, l, q, c);
                        if (std::abs(v) > std::abs(worst)) {
                            worst = v;
                            worst_c = c;
                        }
                    }
                    rep.entries.push_back({a, kp, l, q, worst_c, worst});
                    rep.max_abs = std::max(rep.max_abs, std::abs(worst));
                }
    return rep;
}

GridField zero_inside_ball(const GridField& f, double radius) {
    GridField g = f;
    const double r2 = radius * radius;
    for (int ix = 0; ix < g.nx(); ++ix)
        for (int iy = 0; iy < g.ny(); ++iy)
            for (int iz = 0; iz < g.nz(); ++iz) {
                Vec3 p = g.node_position(ix, iy, iz);
                if (dot(p, p) < r2)
                    for (int c = 0; c < 6; ++c) g.at(c, ix, iy, iz) = 0.0;
            }
    return g;
}

double dminus_defect(const GridField& exterior_field, double rho, int sphere_order) {
    GridField j = zero_inside_ball(exterior_field, 1.0);
    GridField ac = ac_project(j);
    TRData k = translation_representation(ac, sphere_order);
    return k.mass_fraction_below(-rho);
}

double intertwining_defect(const GridField& f, double t, int sphere_order) {
    GridField fa = ac_project(f);
    GridField ft = free_evolve(fa, t);
    const double smax = fa.support_radius(kSupportTol) + std::abs(t) + 6.0 * f.spacing();
    SGrid common = SGrid::symmetric(smax, f.spacing());
    TRData lhs = translation_representation(ft, sphere_order, Exec::Parallel, &common);
    TRData base = translation_representation(fa, sphere_order, Exec::Parallel, &common);
    TRData rhs = base.shifted(t);
    const double nb = rhs.norm();
    if (nb == 0.0) return 0.0;
    TRData diff = lhs;
    for (std::size_t i = 0; i < diff.values.size(); ++i) diff.values[i] -= rhs.values[i];
    return diff.norm() / nb;
}

void save_trdata_csv(const TRData& k, const std::filesystem::path& values_path,
                     const std::filesystem::path& nodes_path) {
    std::ostringstream v;
    v.precision(17);
    v << "j,s,omega_index,value\n";
    for (int j = 0; j < TRData::d; ++j)
        for (int is = 0; is < k.sgrid.count; ++is)
            for (std::size_t iw = 0; iw < k.sphere.size(); ++iw)
                v << (j + 1) << "," << k.sgrid.s(is) << "," << iw << ","
                  << k.value(j, is, static_cast<int>(iw)) << "\n";
    atomic_write(values_path, v.str());

    std::ostringstream n;
    n.precision(17);
    n << "omega_index,ox,oy,oz,weight\n";
    for (std::size_t iw = 0; iw < k.sphere.size(); ++iw) {
        const Vec3& w = k.sphere.nodes[iw];
        n << iw << "," << w.x << "," << w.y << "," << w.z << "," << k.sphere.weights[iw]
          << "\n";
    }
    atomic_write(nodes_path, n.str());
}

} // namespace dissipscat::trep
