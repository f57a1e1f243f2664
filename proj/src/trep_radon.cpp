#include "dissipscat/trep/radon.hpp"

#include <cmath>

#include "dissipscat/symbol/eigenframe.hpp"

namespace dissipscat::trep {

SGrid SGrid::symmetric(double smax, double ds_hint) {
    SGrid g;
    int half = static_cast<int>(std::ceil(smax / ds_hint));
    g.count = 2 * half + 1;
    g.ds = ds_hint;
    g.s0 = -half * ds_hint;
    return g;
}

void require_support_margin(const GridField& g, double extra) {
    const double rs = g.support_radius(kSupportTol);
    const double limit = 0.5 * g.extent() - kSupportMargin * g.spacing() - extra;
    if (rs > limit)
        throw SupportOverflow("field support radius " + std::to_string(rs) +
                              " exceeds box limit " + std::to_string(limit));
}

namespace {

// Tangent pair for the plane mesh; any smooth deterministic choice works
// because the plane integral does not depend on it.
void plane_frame(const Vec3& omega, Vec3& t1, Vec3& t2) {
    Vec3 w = normalized(omega);
    Vec3 a = std::abs(w.z) < 0.9 ? Vec3{0, 0, 1} : Vec3{1, 0, 0};
    t1 = normalized(cross(a, w));
    t2 = cross(t1, w);
}

} // namespace

std::vector<double> radon_all_components(const GridField& g, const Vec3& omega,
                                         const SGrid& sgrid, Exec exec) {
    require_support_margin(g);
    const Vec3 w = normalized(omega);
    Vec3 t1, t2;
    plane_frame(w, t1, t2);
    const double d = g.spacing();
    const double rsup = g.support_radius(kSupportTol) + 2.0 * d;
    std::vector<double> out(static_cast<std::size_t>(sgrid.count) * 6, 0.0);

    parallel_for(exec, sgrid.count, [&](std::int64_t is) {
        const double s = sgrid.s(is);
        const double disc2 = rsup * rsup - s * s;
        if (disc2 <= 0.0) return;
        const double rdisc = std::sqrt(disc2) + 2.0 * d;
        const int half = static_cast<int>(std::ceil(rdisc / d));
        const Vec3 base = s * w;
        double acc[6] = {0, 0, 0, 0, 0, 0};
        for (int ia = -half; ia <= half; ++ia)
            for (int ib = -half; ib <= half; ++ib) {
                const Vec3 p = base + (ia * d) * t1 + (ib * d) * t2;
                for (int c = 0; c < 6; ++c) acc[c] += g.sample(c, p);
            }
        for (int c = 0; c < 6; ++c) out[static_cast<std::size_t>(is) * 6 + c] = acc[c] * d * d;
    });
    return out;
}

std::vector<double> radon_transform(const GridField& g, int component, const Vec3& omega,
                                    const SGrid& sgrid, Exec exec) {
    require_support_margin(g);
    const Vec3 w = normalized(omega);
    Vec3 t1, t2;
    plane_frame(w, t1, t2);
    const double d = g.spacing();
    const double rsup = g.support_radius(kSupportTol) + 2.0 * d;
    std::vector<double> out(sgrid.count, 0.0);

    parallel_for(exec, sgrid.count, [&](std::int64_t is) {
        const double s = sgrid.s(is);
        const double disc2 = rsup * rsup - s * s;
        if (disc2 <= 0.0) return;
        const double rdisc = std::sqrt(disc2) + 2.0 * d;
        const int half = static_cast<int>(std::ceil(rdisc / d));
        const Vec3 base = s * w;
        double acc = 0.0;
        for (int ia = -half; ia <= half; ++ia)
            for (int ib = -half; ib <= half; ++ib)
                acc += g.sample(component, base + (ia * d) * t1 + (ib * d) * t2);
        out[is] = acc * d * d;
    });
    return out;
}

namespace reference {

std::vector<double> radon_transform(const GridField& g, int component, const Vec3& omega,
                                    const SGrid& sgrid) {
    const Vec3 w = normalized(omega);
    Vec3 t1, t2;
    plane_frame(w, t1, t2);
    const double d = g.spacing();
    const double rbox = 0.5 * std::sqrt(3.0) * g.extent() + 2.0 * d;
    const int half = static_cast<int>(std::ceil(rbox / d));
    std::vector<double> out(sgrid.count, 0.0);
    for (int is = 0; is < sgrid.count; ++is) {
        const Vec3 base = sgrid.s(is) * w;
        double acc = 0.0;
        for (int ia = -half; ia <= half; ++ia)
            for (int ib = -half; ib <= half; ++ib)
                acc += g.sample(component, base + (ia * d) * t1 + (ib * d) * t2);
        out[is] = acc * d * d;
    }
    return out;
}

} // namespace reference

} // namespace dissipscat::trep
