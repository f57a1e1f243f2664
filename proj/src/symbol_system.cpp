#include "dissipscat/symbol/system.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "dissipscat/core/rng.hpp"

namespace dissipscat::symbol {

namespace {

Matrix cross_matrix(const Vec3& a) {
    Matrix c = Matrix::Zero(3, 3);
    c(0, 1) = -a.z; c(0, 2) = a.y;
    c(1, 0) = a.z;  c(1, 2) = -a.x;
    c(2, 0) = -a.y; c(2, 1) = a.x;
    return c;
}

} // namespace

SystemSymbol build_maxwell_system() {
    SystemSymbol sys;
    sys.n = 3;
    sys.r = 6;
    sys.matrices.reserve(3);
    for (int j = 0; j < 3; ++j) {
        Vec3 ej{j == 0 ? 1.0 : 0.0, j == 1 ? 1.0 : 0.0, j == 2 ? 1.0 : 0.0};
        Matrix c = cross_matrix(ej);
        Matrix a = Matrix::Zero(6, 6);
        a.block(0, 3, 3, 3) = c;              // E-slot of A(e_j)(E,B) = e_j x B
        a.block(3, 0, 3, 3) = c.transpose();  // B-slot: -e_j x E
        sys.matrices.push_back(a);
    }
    sys.d = 2;
    sys.d0 = 2;
    sys.v0 = 1.0;
    return sys;
}

Matrix symbol_at(const SystemSymbol& sys, const Vec3& xi) {
    Matrix a = Matrix::Zero(sys.r, sys.r);
    a += xi.x * sys.matrices[0];
    a += xi.y * sys.matrices[1];
    a += xi.z * sys.matrices[2];
    return a;
}

double boundary_form(const SystemSymbol& sys, const Vec3& nu, const CVector& u) {
    Matrix a = symbol_at(sys, nu);
    return (u.adjoint() * (a * u)).value().real();
}

CMatrix orthonormal_span(const CMatrix& span, double reltol) {
    if (span.cols() == 0) return CMatrix(span.rows(), 0);
    Eigen::JacobiSVD<CMatrix> svd(span, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    double smax = sv.size() ? sv(0) : 0.0;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > reltol * smax) ++rank;
    return svd.matrixU().leftCols(rank);
}

double subspace_distance(const CMatrix& span_a, const CMatrix& span_b) {
    CMatrix ua = orthonormal_span(span_a);
    CMatrix ub = orthonormal_span(span_b);
    CMatrix pa = ua * ua.adjoint();
    CMatrix pb = ub * ub.adjoint();
    Eigen::JacobiSVD<CMatrix> svd(pa - pb);
    return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

DivergenceCompatibilityReport check_divergence_compatibility(const SystemSymbol& sys,
                                                             int samples, std::uint64_t seed) {
    DivergenceCompatibilityReport rep;
    CounterRng rng(seed);
    rep.kernel_dim = -1;
    for (int s = 0; s < samples; ++s) {
        Vec3 xi = rng.unit_vector(static_cast<std::uint64_t>(s));
        Matrix a = symbol_at(sys, xi);

        // Q(xi)(E,B) = (<xi,E>, <xi,B>)
        Matrix q = Matrix::Zero(2, 6);
        q(0, 0) = xi.x; q(0, 1) = xi.y; q(0, 2) = xi.z;
        q(1, 3) = xi.x; q(1, 4) = xi.y; q(1, 5) = xi.z;

        rep.max_product_norm = std::max(rep.max_product_norm, (q * a).norm());

        Eigen::JacobiSVD<Matrix> qsvd(q, Eigen::ComputeFullV);
        int qrank = 0;
        for (int i = 0; i < qsvd.singularValues().size(); ++i)
            if (qsvd.singularValues()(i) > 1e-12) ++qrank;
        Matrix ker_q = qsvd.matrixV().rightCols(6 - qrank);

        Eigen::JacobiSVD<Matrix> asvd(a, Eigen::ComputeFullU);
        int arank = 0;
        for (int i = 0; i < asvd.singularValues().size(); ++i)
            if (asvd.singularValues()(i) > 1e-9 * asvd.singularValues()(0)) ++arank;
        Matrix im_a = asvd.matrixU().leftCols(arank);

        int kd = 6 - qrank;
        if (rep.kernel_dim < 0) rep.kernel_dim = kd;
        if (kd != rep.kernel_dim) rep.kernel_dim = -2; // inconsistent across xi

        rep.max_subspace_gap = std::max(
            rep.max_subspace_gap,
            subspace_distance(ker_q.cast<cplx>(), im_a.cast<cplx>()));
    }
    rep.pass = rep.max_product_norm < 1e-12 && rep.max_subspace_gap < 1e-10 &&
               rep.kernel_dim == 2 * sys.d;
    return rep;
}

} // namespace dissipscat::symbol
