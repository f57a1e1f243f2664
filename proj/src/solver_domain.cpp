#include "dissipscat/solver/domain.hpp"

#include <cmath>

namespace dissipscat::solver {

Domain build_domain(const DomainSpec& spec) {
    if (spec.n_r < 8 || spec.n_theta < 8)
        throw InvalidSpec("build_domain: need n_r, n_theta >= 8");
    if (!(spec.r_max > 1.0)) throw InvalidSpec("build_domain: r_max must exceed 1");
    if (!(spec.cfl > 0.0) || spec.cfl > 0.9)
        throw InvalidSpec("build_domain: cfl must lie in (0, 0.9]");
    if (spec.epsilon < 0.0) throw InvalidSpec("build_domain: epsilon must be >= 0");
    if (spec.modes.empty()) throw InvalidSpec("build_domain: empty mode set");
    for (int m : spec.modes)
        if (m < 0) throw InvalidSpec("build_domain: stored modes are the m >= 0 representatives");

    Domain d;
    d.spec = spec;
    d.spec.axis = normalized(spec.axis);
    d.dr = (spec.r_max - 1.0) / (spec.n_r - 1);
    d.dtheta = 3.14159265358979323846 / spec.n_theta;
    d.dt = spec.cfl * std::min(d.dr, d.dtheta);
    d.r.resize(spec.n_r);
    for (int i = 0; i < spec.n_r; ++i) d.r[i] = 1.0 + i * d.dr;
    d.theta.resize(spec.n_theta);
    d.sin_theta.resize(spec.n_theta);
    d.cos_theta.resize(spec.n_theta);
    for (int j = 0; j < spec.n_theta; ++j) {
        d.theta[j] = (j + 0.5) * d.dtheta;
        d.sin_theta[j] = std::sin(d.theta[j]);
        d.cos_theta[j] = std::cos(d.theta[j]);
    }
    Vec3 helper = std::abs(d.spec.axis.z) < 0.9 ? Vec3{0, 0, 1} : Vec3{0, 1, 0};
    d.t1 = normalized(cross(helper, d.spec.axis));
    d.t2 = cross(d.spec.axis, d.t1);
    return d;
}

double wall_reflection_coefficient(WallKind wall, double eps) {
    if (wall == WallKind::Pec) return -1.0;
    return -eps / (2.0 + eps);
}

ReflectionMap boundary_reflection_map(double eps, WallKind wall) {
    double c = wall_reflection_coefficient(wall, eps);
    return ReflectionMap{c, c};
}

} // namespace dissipscat::solver
