#include <doctest.h>

#include <cmath>
#include <vector>

#include "dissipscat/ads/fields.hpp"
#include "dissipscat/core/rng.hpp"
#include "dissipscat/trep/free_evolve.hpp"
#include "dissipscat/trep/grid_field.hpp"
#include "dissipscat/trep/radon.hpp"
#include "dissipscat/trep/translation.hpp"

using namespace dissipscat;
using namespace dissipscat::trep;

namespace {

// divergence-free pair: E = grad(psiE) x aE, B = grad(psiB) x aB
struct GaussianPacket {
    Vec3 centerE{0, 0, 0}, centerB{0, 0, 0};
    Vec3 axisE{0, 0, 1}, axisB{1, 0, 0};
    double sigma = 1.05;

    std::array<double, 6> operator()(const Vec3& p) const {
        auto curl_part = [&](const Vec3& c, const Vec3& a) {
            Vec3 d = p - c;
            double psi = std::exp(-0.5 * dot(d, d) / (sigma * sigma));
            Vec3 grad = d * (-psi / (sigma * sigma));
            return cross(grad, a);
        };
        Vec3 e = curl_part(centerE, axisE);
        Vec3 b = curl_part(centerB, axisB);
        return {e.x, e.y, e.z, b.x, b.y, b.z};
    }
};

GridField packet_field(int n, double extent, double sigma = 0.95) {
    GaussianPacket pk;
    pk.sigma = sigma;
    return fill_grid(n, extent, pk);
}

} // namespace

TEST_CASE("radon: disc area and gaussian plane-integral oracles") {
    const int n = 64;
    const double L = 8.0;
    // smoothed ball indicator of radius a in component 0; gaussian exp(-|x|^2)
    // in component 1
    const double a = 2.0, edge = 0.12;
    GridField g = fill_grid(n, L, [&](const Vec3& p) -> std::array<double, 6> {
        double r = norm(p);
        double ind = 0.5 * (1.0 - std::tanh((r - a) / edge));
        double gauss = std::exp(-2.0 * dot(p, p));
        return {ind, gauss, 0, 0, 0, 0};
    });

    SGrid sg = SGrid::symmetric(3.0, g.spacing());
    Vec3 omega = normalized(Vec3{0.3, -0.2, 0.95});
    std::vector<double> ball = radon_transform(g, 0, omega, sg);
    std::vector<double> gauss = radon_transform(g, 1, omega, sg);
    const double pi = 3.14159265358979323846;
    for (int is = 0; is < sg.count; ++is) {
        double s = sg.s(is);
        if (std::abs(s) < 1.2) {
            CHECK(ball[is] == doctest::Approx(pi * (a * a - s * s)).epsilon(0.02));
        }
        CHECK(gauss[is] == doctest::Approx(0.5 * pi * std::exp(-2.0 * s * s)).epsilon(0.01));
    }

    // zero field -> zero transform
    GridField z(n, n, n, L);
    std::vector<double> zero = radon_transform(z, 0, omega, sg);
    for (double v : zero) CHECK(v == 0.0);

    // optimized kernel against the plain reference, and partitioning
    std::vector<double> ref = reference::radon_transform(g, 1, omega, sg);
    std::vector<double> ser = radon_transform(g, 1, omega, sg, Exec::Serial);
    for (int is = 0; is < sg.count; ++is) {
        CHECK(gauss[is] == ser[is]); // parallel == serial, bitwise
        CHECK(std::abs(gauss[is] - ref[is]) < 1e-10);
    }
}

TEST_CASE("radon rejects fields touching the box boundary") {
    const int n = 32;
    GridField g = fill_grid(n, 8.0, [&](const Vec3& p) -> std::array<double, 6> {
        return {1.0 + 0.0 * p.x, 0, 0, 0, 0, 0}; // constant: support everywhere
    });
    SGrid sg = SGrid::symmetric(2.0, g.spacing());
    CHECK_THROWS_AS(radon_transform(g, 0, {0, 0, 1}, sg), SupportOverflow);
}

TEST_CASE("free evolve: unitarity, identity at t=0, packet advection") {
    const int n = 64;
    const double L = 16.0;
    GridField f = packet_field(n, L, 0.7);

    GridField f0 = free_evolve(f, 0.0);
    for (int c = 0; c < 6; ++c) CHECK(f0.component(c) == f.component(c));

    double n0 = f.l2_norm();
    GridField f2 = free_evolve(f, 2.0);
    CHECK(std::abs(f2.l2_norm() - n0) / n0 < 1e-12);

    CHECK_THROWS_AS(free_evolve(f, 40.0), WrapAround);

    // a transverse wave packet along omega advects rigidly at speed 1:
    // u(0,x) = cos(k<x,w>) g(<x,w>) pol, with pol in the -1 eigenspace of
    // A(w)  (E = -w ^ B)
    Vec3 w{0, 0, 1};
    Vec3 bpol{0, 1, 0};
    Vec3 epol = -1.0 * cross(w, bpol);
    const double kw = 3.0, sig = 1.2;
    auto wave = [&](double s) { return std::cos(kw * s) * std::exp(-0.5 * s * s / (sig * sig)); };
    GridField pk = fill_grid(n, L, [&](const Vec3& p) -> std::array<double, 6> {
        double amp = wave(dot(p, w));
        return {amp * epol.x, amp * epol.y, amp * epol.z,
                amp * bpol.x, amp * bpol.y, amp * bpol.z};
    });
    const double t = 1.5;
    // laterally uniform slab: periodic wrap is exact, so skip the support guard
    GridField moved = free_evolve(pk, t, SupportPolicy::Periodic);
    double worst = 0.0;
    for (int iz = 8; iz < n - 8; ++iz) {
        Vec3 p = moved.node_position(n / 2, n / 2, iz);
        double expect = wave(dot(p, w) - t);
        worst = std::max(worst, std::abs(moved.at(4, n / 2, n / 2, iz) - expect * bpol.y));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("ac projection: divergence-free fixed point, gradients killed, idempotent") {
    const int n = 48;
    const double L = 16.0;
    GridField f = packet_field(n, L);
    GridField pf = ac_project(f);
    double n0 = f.l2_norm();
    GridField diff = pf;
    diff *= -1.0;
    diff += f;
    CHECK(diff.l2_norm() / n0 < 1e-12);

    // gradient field in both slots
    GridField grad = fill_grid(n, L, [&](const Vec3& p) -> std::array<double, 6> {
        double psi = std::exp(-0.5 * dot(p, p));
        Vec3 g = p * (-psi);
        return {g.x, g.y, g.z, 2 * g.x, 2 * g.y, 2 * g.z};
    });
    GridField pg = ac_project(grad);
    CHECK(pg.l2_norm() / grad.l2_norm() < 1e-10);

    // idempotence
    GridField ppf = ac_project(pf);
    GridField d2 = ppf;
    d2 *= -1.0;
    d2 += pf;
    CHECK(d2.l2_norm() / n0 < 1e-12);
}

TEST_CASE("grid field binary round trip") {
    GridField g = packet_field(16, 6.0);
    g.time_stamp = 1.25;
    auto tmp = std::filesystem::temp_directory_path() / "dissipscat_gf_test.bin";
    g.save(tmp);
    GridField back = GridField::load(tmp);
    CHECK(back.nx() == 16);
    CHECK(back.extent() == 6.0);
    CHECK(back.time_stamp == 1.25);
    for (int c = 0; c < 6; ++c) CHECK(back.component(c) == g.component(c));
    std::filesystem::remove(tmp);
}

TEST_CASE("translation representation: zero data, linearity, sigma- content") {
    const int n = 48;
    const double L = 14.0;
    const double sig = 0.8;
    GridField z(n, n, n, L);
    TRData kz = translation_representation(z, 8);
    CHECK(kz.norm() == 0.0);

    GridField f = packet_field(n, L, sig);
    TRData k1 = translation_representation(f, 8);
    GridField f2 = f;
    f2 *= -2.5;
    TRData k2 = translation_representation(f2, 8);
    for (std::size_t i = 0; i < k1.values.size(); ++i)
        CHECK(k2.values[i] == doctest::Approx(-2.5 * k1.values[i]).epsilon(1e-12));

    // parallel == serial bitwise
    TRData ks = translation_representation(f, 8, Exec::Serial);
    CHECK(ks.values == k1.values);
}

TEST_CASE("isometry of the representation on divergence-free data") {
    const int n = 64;
    const double L = 16.0;
    GridField f = packet_field(n, L);
    TRData k = translation_representation(f);
    double ratio = k.norm() / f.l2_norm();
    CHECK(std::abs(ratio - 1.0) < 0.02);

    // longitudinal data is annihilated
    GridField grad = fill_grid(n, L, [&](const Vec3& p) -> std::array<double, 6> {
        double psi = std::exp(-0.5 * dot(p, p) / 0.81);
        Vec3 g = p * (-psi / 0.81);
        return {g.x, g.y, g.z, -g.x, -g.y, -g.z};
    });
    TRData kg = translation_representation(grad, 12);
    CHECK(kg.norm() < 0.02 * grad.l2_norm());
}

TEST_CASE("intertwining with free evolution") {
    const int n = 64;
    const double L = 16.0;
    GridField f = packet_field(n, L, 0.85);
    CHECK(intertwining_defect(f, 0.0) < 1e-12);
    CHECK(intertwining_defect(f, 1.0) < 0.05);
}

TEST_CASE("outgoing/incoming support tests on synthetic data") {
    // synthetic representation supported in s >= 0.5
    TRData k;
    k.sphere = sphere_quadrature(4);
    k.sgrid = SGrid::symmetric(4.0, 0.25);
    k.values.assign(static_cast<std::size_t>(TRData::d) * k.sgrid.count * k.sphere.size(), 0.0);
    k.frames.assign(k.sphere.size() * TRData::d * 6, 0.0);
    for (int is = 0; is < k.sgrid.count; ++is) {
        double s = k.sgrid.s(is);
        if (s < 0.5) continue;
        for (std::size_t iw = 0; iw < k.sphere.size(); ++iw)
            k.value(0, is, static_cast<int>(iw)) = std::exp(-s);
    }

    auto dplus = dpm_support_test(k, DpmSign::Plus, 0.0, 1e-9);
    CHECK(dplus.member);
    auto dminus = dpm_support_test(k, DpmSign::Minus, 0.0, 1e-9);
    CHECK(!dminus.member);
    CHECK(dminus.forbidden_fraction == doctest::Approx(1.0));

    // shifting by T_t moves membership to the shifted spaces exactly
    TRData moved = k.shifted(1.0); // support now in s >= 1.5
    CHECK(dpm_support_test(moved, DpmSign::Plus, 1.0, 1e-9).member);
    // and the unshifted data is not D_+^1 (mass in [0.5, 1.0))
    CHECK(!dpm_support_test(k, DpmSign::Plus, 1.0, 0.01).member);
}

TEST_CASE("outgoing data built by free evolution lands in D_+^b") {
    const int n = 64;
    const double L = 16.0;
    GaussianPacket pk;
    pk.sigma = 0.6;
    GridField g = fill_grid(n, L, pk);
    GridField f = free_evolve(ac_project(g), 2.5);
    TRData k = translation_representation(f);
    // support radius of g is ~ 3.9, so after t=2.5 the representation must
    // be concentrated on the right of s = 2.5 - 3.9
    auto rep = dpm_support_test(k, DpmSign::Plus, 0.0, 0.05);
    INFO("forbidden fraction ", rep.forbidden_fraction);
    CHECK(!dpm_support_test(k, DpmSign::Minus, 0.0, 0.05).member);
    CHECK(k.mass_fraction_below(-2.0) < 0.05);
}

TEST_CASE("moment battery vanishes for compact data and trips on truncated tails") {
    const int n = 64;
    const double L = 16.0;
    GridField f = packet_field(n, L);
    TRData k = translation_representation(f);
    auto rep = moment_battery(k);
    INFO("battery max ", rep.max_abs, " norm ", rep.norm);
    CHECK(rep.max_abs < 1e-3 * rep.norm);

    // k = 0 -> all entries zero
    TRData kz = k;
    std::fill(kz.values.begin(), kz.values.end(), 0.0);
    auto repz = moment_battery(kz, 1, 1, 3);
    CHECK(repz.max_abs == 0.0);
}

TEST_CASE("dminus defect: zero field and constructed member") {
    const int n = 48;
    const double L = 16.0;
    GridField z(n, n, n, L);
    CHECK(dminus_defect(z, 1.0, 8) == 0.0);

    // incoming data: evolve a small packet backwards so its representation
    // sits far on the negative-s side
    GaussianPacket pk;
    pk.sigma = 0.6;
    GridField g = fill_grid(64, L, pk);
    GridField f = free_evolve(ac_project(g), -2.7);
    TRData k = translation_representation(f, 8);
    CHECK(k.mass_fraction_below(-1.0) > 0.9);
}
