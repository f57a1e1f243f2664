#include "dissipscat/ads/fields.hpp"

#include <algorithm>
#include <Eigen/Dense>
#include <cmath>

#include "dissipscat/core/quadrature.hpp"
#include "dissipscat/core/reduce.hpp"
#include "dissipscat/core/rng.hpp"

namespace dissipscat::ads {

double ExponentialProfile::deriv(int k, double s) const {
    double f = std::exp(rate * s);
    for (int i = 0; i < k; ++i) f *= rate;
    return f;
}

double BumpProfile::deriv(int k, double s) const {
    const double u = (s - center) / halfwidth;
    const double w = 1.0 - u * u;
    if (w <= 0.0) return 0.0;
    const double w2 = w * w, w3 = w2 * w, w4 = w3 * w;
    const double h = std::exp(-1.0 / w);
    // phi = -1/w and its u-derivatives; h^{(k)}_u by Faa di Bruno up to 3.
    const double p1 = -2.0 * u / w2;
    const double p2 = -2.0 / w2 - 8.0 * u * u / w3;
    const double p3 = -24.0 * u / w3 - 48.0 * u * u * u / w4;
    double v = 0.0;
    switch (k) {
        case 0: v = h; break;
        case 1: v = p1 * h; break;
        case 2: v = (p2 + p1 * p1) * h; break;
        case 3: v = (p3 + 3.0 * p1 * p2 + p1 * p1 * p1) * h; break;
        default: throw std::invalid_argument("BumpProfile: derivative order > 3 not implemented");
    }
    double scale = 1.0;
    for (int i = 0; i < k; ++i) scale /= halfwidth;
    return v * scale;
}

double decay_rate(double eps) {
    if (!(eps > 0.0)) throw NonPositiveEpsilon("decay_rate requires eps > 0");
    return 0.5 * (1.0 - std::sqrt(1.0 + 4.0 / eps));
}

namespace {

struct Geometry {
    double rho;
    Vec3 xhat;
    Vec3 u; // xhat ^ axis
    Vec3 v; // (xhat . axis) xhat - axis
    double ca; // xhat . axis
};

Geometry geometry(const Vec3& x, const Vec3& axis) {
    Geometry g;
    g.rho = norm(x);
    if (g.rho < 1e-12) throw OriginSingularity("field evaluation at |x| < 1e-12");
    g.xhat = x / g.rho;
    g.u = cross(g.xhat, axis);
    g.ca = dot(g.xhat, axis);
    g.v = g.ca * g.xhat - axis;
    return g;
}

struct Coeffs {
    double a, b, c;     // E = a*u, B = -b*v + 2c*axis
    double as, bs, cs;  // d/ds at fixed rho
    double aD, bD, cD;  // total radial derivative d/drho with s = rho + t
};

Coeffs coeffs(const Profile& h, double t, double rho) {
    const double s = rho + t;
    const double h0 = h.deriv(0, s), h1 = h.deriv(1, s), h2 = h.deriv(2, s),
                 h3 = h.deriv(3, s);
    const double q1 = 1.0 / rho, q2 = q1 * q1, q3 = q2 * q1, q4 = q3 * q1;
    Coeffs c;
    c.a = h2 * q1 - h1 * q2;
    c.b = h2 * q1 - 3.0 * h1 * q2 + 3.0 * h0 * q3;
    c.c = h1 * q2 - h0 * q3;
    c.as = h3 * q1 - h2 * q2;
    c.bs = h3 * q1 - 3.0 * h2 * q2 + 3.0 * h1 * q3;
    c.cs = h2 * q2 - h1 * q3;
    c.aD = h3 * q1 - 2.0 * h2 * q2 + 2.0 * h1 * q3;
    c.bD = h3 * q1 - 4.0 * h2 * q2 + 9.0 * h1 * q3 - 9.0 * h0 * q4;
    c.cD = h2 * q2 - 3.0 * h1 * q3 + 3.0 * h0 * q4;
    return c;
}

} // namespace

FieldValue eval_fields(const AdsParams& p, const Profile& h, double t, const Vec3& x) {
    Geometry g = geometry(x, p.axis);
    Coeffs c = coeffs(h, t, g.rho);
    FieldValue f;
    f.E = c.a * g.u;
    f.B = (-c.b) * g.v + (2.0 * c.c) * p.axis;
    return f;
}

FieldValue eval_fields(const AdsParams& p, double t, const Vec3& x) {
    ExponentialProfile h(p.r);
    return eval_fields(p, h, t, x);
}

FieldJacobian eval_jacobian(const AdsParams& p, const Profile& h, double t, const Vec3& x) {
    Geometry g = geometry(x, p.axis);
    Coeffs c = coeffs(h, t, g.rho);
    const double q1 = 1.0 / g.rho;

    FieldJacobian J;
    J.dEdt = c.as * g.u;
    J.dBdt = (-c.bs) * g.v + (2.0 * c.cs) * p.axis;

    for (int j = 0; j < 3; ++j) {
        Vec3 ej{j == 0 ? 1.0 : 0.0, j == 1 ? 1.0 : 0.0, j == 2 ? 1.0 : 0.0};
        // d xhat / dx_j and helpers
        Vec3 dxhat = (ej - g.xhat[j] * g.xhat) * q1;
        double dca = (p.axis[j] - g.ca * g.xhat[j]) * q1;
        Vec3 du = cross(ej, p.axis) * q1 - (g.xhat[j] * q1) * g.u;
        Vec3 dv = dca * g.xhat + g.ca * dxhat;
        for (int i = 0; i < 3; ++i) {
            J.dE[i][j] = c.aD * g.xhat[j] * g.u[i] + c.a * du[i];
            J.dB[i][j] = -c.bD * g.xhat[j] * g.v[i] - c.b * dv[i] +
                         2.0 * c.cD * g.xhat[j] * p.axis[i];
        }
    }
    return J;
}

namespace {

Vec3 curl_of(const double d[3][3]) {
    return {d[2][1] - d[1][2], d[0][2] - d[2][0], d[1][0] - d[0][1]};
}

double div_of(const double d[3][3]) { return d[0][0] + d[1][1] + d[2][2]; }

double max_abs(const Vec3& v) {
    return std::max({std::abs(v.x), std::abs(v.y), std::abs(v.z)});
}

FieldJacobian fd_jacobian(const AdsParams& p, const Profile& h, double t, const Vec3& x,
                          double step) {
    FieldJacobian J{};
    FieldValue fp = eval_fields(p, h, t + step, x);
    FieldValue fm = eval_fields(p, h, t - step, x);
    J.dEdt = (fp.E - fm.E) / (2.0 * step);
    J.dBdt = (fp.B - fm.B) / (2.0 * step);
    for (int j = 0; j < 3; ++j) {
        Vec3 dx{0, 0, 0};
        dx[j] = step;
        FieldValue gp = eval_fields(p, h, t, x + dx);
        FieldValue gm = eval_fields(p, h, t, x - dx);
        for (int i = 0; i < 3; ++i) {
            J.dE[i][j] = (gp.E[i] - gm.E[i]) / (2.0 * step);
            J.dB[i][j] = (gp.B[i] - gm.B[i]) / (2.0 * step);
        }
    }
    return J;
}

} // namespace

double ResidualReport::relative() const {
    double worst = std::max({max_maxwell, max_divergence, max_boundary});
    return worst / std::max(scale, 1e-300);
}

ResidualReport verify_exact_solution(const AdsParams& p, const Profile& h,
                                     std::span<const double> times,
                                     std::span<const Vec3> points, ResidualMode mode,
                                     double fd_step, Exec exec) {
    const std::size_t n = points.size();
    std::vector<double> rm(n, 0.0), rd(n, 0.0), rb(n, 0.0), sc(n, 0.0);
    parallel_for(exec, static_cast<std::int64_t>(n), [&](std::int64_t i) {
        const double t = times[static_cast<std::size_t>(i) % times.size()];
        const Vec3& x = points[static_cast<std::size_t>(i)];
        FieldJacobian J = (mode == ResidualMode::Analytic)
                              ? eval_jacobian(p, h, t, x)
                              : fd_jacobian(p, h, t, x, fd_step);
        Vec3 curlE = curl_of(J.dE);
        Vec3 curlB = curl_of(J.dB);
        rm[i] = std::max(max_abs(J.dEdt - curlB), max_abs(J.dBdt + curlE));
        rd[i] = std::max(std::abs(div_of(J.dE)), std::abs(div_of(J.dB)));
        double s = std::max({max_abs(J.dEdt), max_abs(J.dBdt), max_abs(curlE), max_abs(curlB)});
        // impedance relation on the unit sphere, with the obstacle-outward
        // direction x/|x|
        const double rho = norm(x);
        if (std::abs(rho - 1.0) < 1e-9) {
            FieldValue f = eval_fields(p, h, t, x);
            Vec3 xh = x / rho;
            Vec3 Et = f.E - dot(f.E, xh) * xh;
            Vec3 Bt = f.B - dot(f.B, xh) * xh;
            Vec3 res = (1.0 + p.epsilon) * Et - cross(xh, Bt);
            rb[i] = max_abs(res);
            s = std::max(s, std::max(max_abs(f.E), max_abs(f.B)));
        }
        sc[i] = s;
    });
    ResidualReport rep;
    for (std::size_t i = 0; i < n; ++i) {
        rep.max_maxwell = std::max(rep.max_maxwell, rm[i]);
        rep.max_divergence = std::max(rep.max_divergence, rd[i]);
        rep.max_boundary = std::max(rep.max_boundary, rb[i]);
        rep.scale = std::max(rep.scale, sc[i]);
    }
    return rep;
}

ResidualReport verify_exact_solution_sampled(const AdsParams& p, int n, double rmax,
                                             double tmax, std::uint64_t seed,
                                             ResidualMode mode) {
    CounterRng rng(seed);
    std::vector<Vec3> pts;
    std::vector<double> ts;
    pts.reserve(n);
    ts.reserve(n);
    for (int i = 0; i < n; ++i) {
        Vec3 w = rng.unit_vector(2 * static_cast<std::uint64_t>(i));
        double rho = rng.uniform(2 * static_cast<std::uint64_t>(i) + 1, 1.0, rmax);
        // every fourth point sits on the wall so the impedance relation is hit
        if (i % 4 == 0) rho = 1.0;
        pts.push_back(rho * w);
        ts.push_back(tmax * rng.uniform(7777 + static_cast<std::uint64_t>(i)));
    }
    ExponentialProfile h(p.r);
    return verify_exact_solution(p, h, ts, pts, mode);
}

double shell_energy(const AdsParams& p, double t, double a, double b, int n_radial,
                    int sphere_order) {
    if (b <= a) return 0.0;
    Quad1D qr = gauss_legendre(n_radial, a, b);
    SphereQuad sq = sphere_quadrature(sphere_order);
    ExponentialProfile h(p.r);
    const std::size_t n = qr.nodes.size() * sq.size();
    std::vector<double> contrib(n);
    parallel_for(Exec::Parallel, static_cast<std::int64_t>(n), [&](std::int64_t idx) {
        const std::size_t ir = static_cast<std::size_t>(idx) / sq.size();
        const std::size_t iw = static_cast<std::size_t>(idx) % sq.size();
        const double rho = qr.nodes[ir];
        FieldValue f = eval_fields(p, h, t, rho * sq.nodes[iw]);
        contrib[idx] = (dot(f.E, f.E) + dot(f.B, f.B)) * rho * rho * qr.weights[ir] *
                       sq.weights[iw];
    });
    return tree_sum(contrib);
}

double envelope_slope(const AdsParams& p, const Vec3& omega, std::span<const double> radii,
                      FieldChannel channel, bool compensate_falloff) {
    ExponentialProfile h(p.r);
    std::vector<double> logs(radii.size());
    Vec3 w = normalized(omega);
    double peak = 0.0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        FieldValue f = eval_fields(p, h, 0.0, radii[i] * w);
        Vec3 g = channel == FieldChannel::E ? f.E : f.B;
        double mag = norm(g);
        peak = std::max(peak, mag);
        logs[i] = std::log(std::max(mag, 1e-300));
    }
    if (peak < 1e-280)
        throw AllZeroRay("envelope_slope: field channel vanishes along this ray");
    if (!compensate_falloff) {
        // plain least squares on (s, log magnitude); sits below the rate
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double n = static_cast<double>(radii.size());
        for (std::size_t i = 0; i < radii.size(); ++i) {
            sx += radii[i];
            sy += logs[i];
            sxx += radii[i] * radii[i];
            sxy += radii[i] * logs[i];
        }
        return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    // model log|field| = rate*s + q*log(s) + c, so an algebraic prefactor
    // s^q cannot bias the fitted exponential rate
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
    for (std::size_t i = 0; i < radii.size(); ++i) {
        Eigen::Vector3d row{radii[i], std::log(radii[i]), 1.0};
        m += row * row.transpose();
        rhs += logs[i] * row;
    }
    return m.ldlt().solve(rhs)(0);
}

void eval_fields_batch(const AdsParams& p, const Profile& h, std::span<const double> times,
                       std::span<const Vec3> points, std::span<double> out, Exec exec) {
    parallel_for(exec, static_cast<std::int64_t>(points.size()), [&](std::int64_t i) {
        const double t = times[static_cast<std::size_t>(i) % times.size()];
        FieldValue f = eval_fields(p, h, t, points[static_cast<std::size_t>(i)]);
        double* o = out.data() + 6 * i;
        o[0] = f.E.x; o[1] = f.E.y; o[2] = f.E.z;
        o[3] = f.B.x; o[4] = f.B.y; o[5] = f.B.z;
    });
}

} // namespace dissipscat::ads
