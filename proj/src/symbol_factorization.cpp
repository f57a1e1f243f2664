#include "dissipscat/symbol/factorization.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>

namespace dissipscat::symbol {

namespace {

struct SymbolSplit {
    CMatrix pos;    // orthonormal basis of the positive eigenspaces of A(nu)
    CMatrix neg;
    CMatrix ker;
    double scale = 0.0; // largest |eigenvalue|
};

// Spectral split of A(nu) without any chart gauge; projectors are all that
// the factorization needs.
SymbolSplit split_symbol(const SystemSymbol& sys, const Vec3& nu) {
    Matrix a = symbol_at(sys, normalized(nu));
    Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    const auto& ev = es.eigenvalues();
    const auto& vecs = es.eigenvectors();
    SymbolSplit out;
    out.scale = std::max(std::abs(ev(0)), std::abs(ev(sys.r - 1)));
    const double tol = 1e-9 * std::max(out.scale, 1e-300);
    int npos = 0, nneg = 0, nker = 0;
    for (int i = 0; i < sys.r; ++i) {
        if (ev(i) > tol) ++npos;
        else if (ev(i) < -tol) ++nneg;
        else ++nker;
    }
    out.pos.resize(sys.r, npos);
    out.neg.resize(sys.r, nneg);
    out.ker.resize(sys.r, nker);
    int ip = 0, in = 0, ik = 0;
    for (int i = 0; i < sys.r; ++i) {
        if (ev(i) > tol) out.pos.col(ip++) = vecs.col(i).cast<cplx>();
        else if (ev(i) < -tol) out.neg.col(in++) = vecs.col(i).cast<cplx>();
        else out.ker.col(ik++) = vecs.col(i).cast<cplx>();
    }
    return out;
}

} // namespace

PNFactorization factorize_boundary_space(const SystemSymbol& sys, const Vec3& nu,
                                         const BoundarySpace& N) {
    auto rep = check_maximal_dissipative(sys, nu, N);
    if (!rep.maximal)
        throw NotMaximalDissipative("factorize_boundary_space: space is not maximal dissipative");

    const int d = sys.d;
    Matrix a_real = symbol_at(sys, normalized(nu));
    CMatrix a = a_real.cast<cplx>();
    SymbolSplit sp = split_symbol(sys, nu);

    // N minus its kernel part, as an orthonormal basis V (r x d).
    CMatrix pker = sp.ker * sp.ker.adjoint();
    CMatrix reduced = N.basis - pker * N.basis;
    CMatrix v = orthonormal_span(reduced);
    if (v.cols() != d)
        throw NotMaximalDissipative("factorize_boundary_space: N minus Ker has wrong dimension");

    // Diagonalize the boundary form on V.
    CMatrix form = v.adjoint() * (a * v);
    Eigen::SelfAdjointEigenSolver<CMatrix> fes(form);
    const auto& lam = fes.eigenvalues(); // ascending, all <= ~0 here
    const double rtol = kRadicalTol * std::max(sp.scale, 1e-300);

    std::vector<int> rad_idx, neg_idx;
    for (int i = 0; i < d; ++i) {
        if (std::abs(lam(i)) < rtol) rad_idx.push_back(i);
        else neg_idx.push_back(i);
    }
    const int mu = static_cast<int>(rad_idx.size());

    PNFactorization out;
    out.mu = mu;
    out.p.resize(d);
    out.nvec.resize(d);

    CMatrix ppos = sp.pos * sp.pos.adjoint();
    CMatrix pneg = sp.neg * sp.neg.adjoint();

    // Radical pairs: split each null direction into its Sigma+- halves. The
    // two halves carry identical A-form Grams (polarization of the vanishing
    // form block), so one congruence transform orthonormalizes both.
    if (mu > 0) {
        CMatrix u(sys.r, mu), up(sys.r, mu), un(sys.r, mu);
        for (int i = 0; i < mu; ++i) {
            u.col(i) = v * fes.eigenvectors().col(rad_idx[i]);
            up.col(i) = ppos * u.col(i);
            un.col(i) = pneg * u.col(i);
        }
        CMatrix gram = up.adjoint() * (a * up);
        Eigen::SelfAdjointEigenSolver<CMatrix> ges(gram);
        CMatrix t = ges.eigenvectors();
        for (int i = 0; i < mu; ++i) t.col(i) /= std::sqrt(std::max(ges.eigenvalues()(i), 1e-300));
        CMatrix pcols = up * t;
        CMatrix ncols = un * t;
        for (int i = 0; i < mu; ++i) {
            out.p[i] = pcols.col(i);
            out.nvec[i] = ncols.col(i);
        }
    }

    // Strictly negative directions, scaled to <n, A n> = -1, then made
    // A-orthogonal to the radical pairs by adding radical (in-N) elements.
    for (int k = 0; k < static_cast<int>(neg_idx.size()); ++k) {
        CVector w = v * fes.eigenvectors().col(neg_idx[k]);
        w /= std::sqrt(-lam(neg_idx[k]));
        for (int i = 0; i < mu; ++i) {
            cplx c = -(out.p[i].adjoint() * (a * w)).value();
            w += c * (out.p[i] + out.nvec[i]);
        }
        out.nvec[mu + k] = w;
    }

    // Remaining p_j: an A-orthonormal basis of the positive-form complement
    // {u in Sigma+ + Sigma-: <n_i, A u> = 0 for all i, <p_i, A u> = 0 for
    // i <= mu}. Its dimension is exactly d - mu.
    if (mu < d) {
        CMatrix constraints(sys.r, d + mu + sp.ker.cols());
        for (int i = 0; i < d; ++i) constraints.col(i) = a * out.nvec[i];
        for (int i = 0; i < mu; ++i) constraints.col(d + i) = a * out.p[i];
        constraints.rightCols(sp.ker.cols()) = sp.ker;

        Eigen::JacobiSVD<CMatrix> svd(constraints.adjoint(), Eigen::ComputeFullV);
        int rank = 0;
        const auto& sv = svd.singularValues();
        for (int i = 0; i < sv.size(); ++i)
            if (sv(i) > 1e-10 * sv(0)) ++rank;
        CMatrix w = svd.matrixV().rightCols(sys.r - rank);
        if (w.cols() != d - mu)
            throw NotMaximalDissipative("factorize_boundary_space: complement has wrong dimension");

        CMatrix gram = w.adjoint() * (a * w); // positive definite here
        Eigen::SelfAdjointEigenSolver<CMatrix> ges(gram);
        CMatrix t = ges.eigenvectors();
        for (int i = 0; i < d - mu; ++i)
            t.col(i) /= std::sqrt(std::max(ges.eigenvalues()(i), 1e-300));
        CMatrix pcols = w * t;
        for (int i = 0; i < d - mu; ++i) out.p[mu + i] = pcols.col(i);
    }
    return out;
}

BoundarySpace reconstruct_space(const SystemSymbol& sys, const Vec3& nu,
                                const PNFactorization& f) {
    SymbolSplit sp = split_symbol(sys, nu);
    const int d = sys.d;
    BoundarySpace bs;
    bs.nu = normalized(nu);
    bs.dim = d + static_cast<int>(sp.ker.cols());
    bs.basis.resize(sys.r, bs.dim);
    for (int i = 0; i < f.mu; ++i) bs.basis.col(i) = f.p[i] + f.nvec[i];
    for (int i = f.mu; i < d; ++i) bs.basis.col(i) = f.nvec[i];
    bs.basis.rightCols(sp.ker.cols()) = sp.ker;
    return bs;
}

BoundaryClassification classify_boundary_space(const SystemSymbol& sys, const Vec3& nu,
                                               const BoundarySpace& N) {
    auto rep = check_maximal_dissipative(sys, nu, N);
    if (!rep.maximal)
        throw NotMaximalDissipative("classify_boundary_space: space is not maximal dissipative");

    SymbolSplit sp = split_symbol(sys, nu);
    CMatrix pker = sp.ker * sp.ker.adjoint();
    CMatrix reduced = orthonormal_span(N.basis - pker * N.basis);

    BoundaryClassification cls;
    cls.holds_58 = subspace_distance(reduced, sp.neg) < 1e-10;
    PNFactorization f = factorize_boundary_space(sys, nu, N);
    cls.holds_59 = (f.mu == 0) && !cls.holds_58;
    return cls;
}

} // namespace dissipscat::symbol
