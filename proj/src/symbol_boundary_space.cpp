#include "dissipscat/symbol/boundary_space.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace dissipscat::symbol {

namespace {

// Any deterministic tangent pair; the impedance space itself does not
// depend on this choice, only the emitted basis vectors do.
void any_tangent_pair(const Vec3& nu, Vec3& t1, Vec3& t2) {
    Vec3 n = normalized(nu);
    Vec3 a = std::abs(n.z) < 0.9 ? Vec3{0.0, 0.0, 1.0} : Vec3{1.0, 0.0, 0.0};
    t1 = normalized(cross(a, n));
    t2 = cross(t1, n);
}

void put_pair(CMatrix& m, int col, const Vec3& e, const Vec3& b) {
    m(0, col) = e.x; m(1, col) = e.y; m(2, col) = e.z;
    m(3, col) = b.x; m(4, col) = b.y; m(5, col) = b.z;
}

} // namespace

BoundarySpace impedance_space(const Vec3& nu, double eps) {
    if (eps < 0.0) throw NonPositiveEpsilon("impedance_space requires eps >= 0");
    Vec3 n = normalized(nu);
    Vec3 t1, t2;
    any_tangent_pair(n, t1, t2);

    BoundarySpace bs;
    bs.nu = n;
    bs.dim = 4;
    bs.basis = CMatrix::Zero(6, 4);
    // tangential pairs: E_tan = -(nu ^ B_tan)/(1+eps)
    put_pair(bs.basis, 0, cross(n, t1) * (-1.0 / (1.0 + eps)), t1);
    put_pair(bs.basis, 1, cross(n, t2) * (-1.0 / (1.0 + eps)), t2);
    // Ker A(nu): both fields along nu
    put_pair(bs.basis, 2, n, {0, 0, 0});
    put_pair(bs.basis, 3, {0, 0, 0}, n);
    return bs;
}

BoundarySpace pec_space(const Vec3& nu) {
    Vec3 n = normalized(nu);
    Vec3 t1, t2;
    any_tangent_pair(n, t1, t2);
    BoundarySpace bs;
    bs.nu = n;
    bs.dim = 4;
    bs.basis = CMatrix::Zero(6, 4);
    put_pair(bs.basis, 0, {0, 0, 0}, t1);
    put_pair(bs.basis, 1, {0, 0, 0}, t2);
    put_pair(bs.basis, 2, n, {0, 0, 0});
    put_pair(bs.basis, 3, {0, 0, 0}, n);
    return bs;
}

DissipativityReport check_maximal_dissipative(const SystemSymbol& sys, const Vec3& nu,
                                              const BoundarySpace& N) {
    DissipativityReport rep;
    CMatrix u = orthonormal_span(N.basis);
    if (u.cols() == 0) {
        rep.dissipative = true;
        rep.maximal = false;
        return rep;
    }
    Matrix a = symbol_at(sys, normalized(nu));
    CMatrix form = u.adjoint() * (a.cast<cplx>() * u);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(form);
    rep.worst_form_value = es.eigenvalues().maxCoeff();
    rep.dissipative = rep.worst_form_value <= 1e-12;
    rep.maximal = rep.dissipative && u.cols() == sys.d + sys.d0;
    return rep;
}

BoundarySpace random_max_dissipative_space(const SystemSymbol& sys, const Vec3& nu, int mu,
                                           const CounterRng& rng, std::uint64_t counter) {
    EigenFrame fr = eigen_frame(sys, -normalized(nu)); // pos_vectors span Sigma_+(nu)
    const int d = sys.d;
    // Random unitary mixes of the Sigma_+ and Sigma_- frames. For d = 2 a
    // product of a phase rotation, a real rotation and column phases covers
    // enough of U(2) for test purposes.
    auto mix = [&](const CMatrix& base, std::uint64_t c0) {
        CMatrix m = base;
        double ang = rng.uniform(c0, 0.0, 6.283185307179586);
        cplx ph1 = rng.unit_complex(c0 + 1);
        cplx ph2 = rng.unit_complex(c0 + 2);
        CMatrix rot(2, 2);
        rot(0, 0) = std::cos(ang) * ph1; rot(0, 1) = -std::sin(ang) * ph2;
        rot(1, 0) = std::sin(ang) * ph1; rot(1, 1) = std::cos(ang) * ph2;
        return CMatrix(m * rot);
    };
    CMatrix p = mix(fr.pos_vectors, 10 * counter);
    CMatrix n = mix(fr.neg_vectors, 10 * counter + 5);

    BoundarySpace bs;
    bs.nu = normalized(nu);
    bs.dim = d + sys.d0;
    bs.basis = CMatrix::Zero(sys.r, bs.dim);
    for (int j = 0; j < d; ++j) {
        if (j < mu)
            bs.basis.col(j) = p.col(j) + n.col(j); // null direction of the form
        else
            bs.basis.col(j) = n.col(j);
    }
    bs.basis.rightCols(sys.d0) = fr.kernel_basis;
    return bs;
}

} // namespace dissipscat::symbol
