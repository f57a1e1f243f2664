#include <doctest.h>

#include <cmath>
#include <numeric>

#include "dissipscat/core/io.hpp"
#include "dissipscat/core/quadrature.hpp"
#include "dissipscat/core/reduce.hpp"
#include "dissipscat/core/rng.hpp"
#include "dissipscat/core/sph_harmonics.hpp"

using namespace dissipscat;

TEST_CASE("tree_sum is bitwise identical under serial and parallel execution") {
    CounterRng rng(42);
    std::vector<double> a(100003);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = rng.uniform(i, -1.0, 1.0);
    double s_ser = tree_sum(a, Exec::Serial);
    double s_par = tree_sum(a, Exec::Parallel);
    CHECK(s_ser == s_par);
    // accuracy against long-double accumulation
    long double acc = 0.0L;
    for (double v : a) acc += v;
    CHECK(std::abs(s_ser - static_cast<double>(acc)) < 1e-10);
}

TEST_CASE("counter rng is reproducible and in range") {
    CounterRng a(7), b(7), c(8);
    for (std::uint64_t i = 0; i < 100; ++i) {
        CHECK(a.uniform(i) == b.uniform(i));
        CHECK(a.uniform(i) >= 0.0);
        CHECK(a.uniform(i) < 1.0);
    }
    CHECK(a.bits(3) != c.bits(3));
    Vec3 v = a.unit_vector(11);
    CHECK(std::abs(norm(v) - 1.0) < 1e-14);
}

TEST_CASE("gauss-legendre integrates polynomials exactly") {
    Quad1D q = gauss_legendre(8, 0.0, 2.0);
    double s = 0.0, s7 = 0.0;
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
        s += q.weights[i];
        s7 += q.weights[i] * std::pow(q.nodes[i], 7);
    }
    CHECK(s == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(s7 == doctest::Approx(256.0 / 8.0).epsilon(1e-13)); // int_0^2 x^7 = 32
}

TEST_CASE("sphere quadrature: weights, antipodes, harmonic orthonormality") {
    SphereQuad s = sphere_quadrature(16);
    double tot = 0.0;
    for (double w : s.weights) tot += w;
    CHECK(tot == doctest::Approx(4.0 * 3.14159265358979323846).epsilon(1e-13));

    for (std::size_t i = 0; i < s.size(); ++i) {
        Vec3 anti = s.nodes[s.antipode_index[i]];
        CHECK(norm(anti + s.nodes[i]) < 1e-12);
    }

    // <Y_lq, Y_l'q'> = delta under the rule, through degree 6
    for (int l = 0; l <= 6; l += 2)
        for (int l2 = l; l2 <= 6; l2 += 3)
            for (int q = -l; q <= l; q += std::max(1, l))
                for (int q2 = -l2; q2 <= l2; q2 += std::max(1, l2)) {
                    double acc = 0.0;
                    for (std::size_t i = 0; i < s.size(); ++i)
                        acc += s.weights[i] * real_sph_harmonic(l, q, s.nodes[i]) *
                               real_sph_harmonic(l2, q2, s.nodes[i]);
                    double expect = (l == l2 && q == q2) ? 1.0 : 0.0;
                    CHECK(std::abs(acc - expect) < 1e-12);
                }
}

TEST_CASE("low order harmonics match closed forms") {
    const double pi = 3.14159265358979323846;
    Vec3 w = normalized(Vec3{0.3, -0.5, 0.81});
    CHECK(real_sph_harmonic(0, 0, w) == doctest::Approx(std::sqrt(1.0 / (4 * pi))).epsilon(1e-14));
    CHECK(real_sph_harmonic(1, 0, w) == doctest::Approx(std::sqrt(3.0 / (4 * pi)) * w.z).epsilon(1e-14));
    CHECK(real_sph_harmonic(1, 1, w) == doctest::Approx(std::sqrt(3.0 / (4 * pi)) * w.x).epsilon(1e-13));
    CHECK(real_sph_harmonic(1, -1, w) == doctest::Approx(std::sqrt(3.0 / (4 * pi)) * w.y).epsilon(1e-13));
}

TEST_CASE("complex matrix text round trip") {
    ComplexMatrixText m;
    m.rows = 2;
    m.cols = 3;
    m.data = {cplx(1, 2), cplx(-0.5, 0), cplx(0, -3.25), cplx(4, 0), cplx(5.5, 6.5), cplx(7, 0)};
    ComplexMatrixText back = parse_complex_matrix(format_complex_matrix(m));
    REQUIRE(back.rows == 2);
    REQUIRE(back.cols == 3);
    for (std::size_t i = 0; i < m.data.size(); ++i) CHECK(back.data[i] == m.data[i]);

    CHECK_THROWS_AS(parse_complex_matrix("2 2\n1 2 3"), IoError);
    CHECK_THROWS_AS(parse_complex_matrix("bad"), IoError);

    // bare reals are accepted
    ComplexMatrixText r = parse_complex_matrix("1 2\n0.5 -3\n");
    CHECK(r.at(0, 1) == cplx(-3.0, 0.0));
}
