#include "dissipscat/symbol/eigenframe.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace dissipscat::symbol {

void tangent_frame(const Vec3& xi, const Vec3& chart_axis, Vec3& t1, Vec3& t2) {
    Vec3 x = normalized(xi);
    Vec3 a = normalized(chart_axis);
    double c = dot(x, a);
    double cap = std::cos(kFrameCapHalfAngle);
    if (std::abs(c) > cap)
        throw DegenerateDirection("direction inside the excluded polar cap of the frame chart");
    t1 = normalized(cross(a, x));
    t2 = cross(t1, x);
}

namespace {

// Gauge alignment: rotate the eigenspace basis V to the closest frame to the
// seed columns S (polar factor of V^H S). Deterministic and smooth wherever
// V^H S stays nonsingular.
CMatrix align_gauge(const CMatrix& v, const CMatrix& seeds) {
    CMatrix m = v.adjoint() * seeds;
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    CMatrix u = svd.matrixU() * svd.matrixV().adjoint();
    return v * u;
}

// Chart seed vectors for a Maxwell-shaped system (r = 6): the closed-form
// frame of the +-tau eigenspaces of A(-xi), built from the tangent pair.
// sign = +1 seeds the positive eigenspace of A(-xi) (= Sigma_-(xi)), where
// (E,B) = (-xi^B, B)/sqrt(2); sign = -1 mirrors it.
CMatrix maxwell_seeds(const Vec3& xi, const Vec3& t1, const Vec3& t2, double sign) {
    CMatrix s(6, 2);
    const double inv = 1.0 / std::sqrt(2.0);
    Vec3 x = normalized(xi);
    const Vec3 tv[2] = {t1, t2};
    for (int j = 0; j < 2; ++j) {
        Vec3 e = cross(x, tv[j]) * (-sign);
        s(0, j) = inv * e.x; s(1, j) = inv * e.y; s(2, j) = inv * e.z;
        s(3, j) = inv * tv[j].x; s(4, j) = inv * tv[j].y; s(5, j) = inv * tv[j].z;
    }
    return s;
}

// Kernel of the Maxwell symbol: both fields parallel to xi.
CMatrix maxwell_kernel_seeds(const Vec3& xi) {
    CMatrix s = CMatrix::Zero(6, 2);
    Vec3 x = normalized(xi);
    s(0, 0) = x.x; s(1, 0) = x.y; s(2, 0) = x.z;
    s(3, 1) = x.x; s(4, 1) = x.y; s(5, 1) = x.z;
    return s;
}

CMatrix generic_seeds(int r, int count, int offset) {
    CMatrix s = CMatrix::Zero(r, count);
    for (int j = 0; j < count; ++j) s((offset + j) % r, j) = 1.0;
    return s;
}

} // namespace

EigenFrame eigen_frame(const SystemSymbol& sys, const Vec3& xi, const Vec3& chart_axis) {
    Vec3 t1, t2;
    tangent_frame(xi, chart_axis, t1, t2); // raises DegenerateDirection in the caps

    Matrix a_minus = symbol_at(sys, -normalized(xi));
    Eigen::SelfAdjointEigenSolver<Matrix> es(a_minus);
    const auto& evals = es.eigenvalues();   // ascending
    const auto& evecs = es.eigenvectors();

    const double scale = std::max(1e-300, std::abs(evals(sys.r - 1)));
    const double tol = 1e-9 * scale;

    EigenFrame frame;
    frame.xi = normalized(xi);

    // cluster by eigenvalue, descending
    std::vector<std::pair<double, std::vector<int>>> clusters;
    for (int i = sys.r - 1; i >= 0; --i) {
        if (!clusters.empty() && std::abs(evals(i) - clusters.back().first) < tol) {
            clusters.back().second.push_back(i);
        } else {
            clusters.push_back({evals(i), {i}});
        }
    }

    CMatrix pos(sys.r, 0), neg(sys.r, 0), ker(sys.r, 0);
    std::vector<double> tau;
    for (auto& [lam, idx] : clusters) {
        CMatrix v(sys.r, static_cast<int>(idx.size()));
        for (int c = 0; c < static_cast<int>(idx.size()); ++c)
            v.col(c) = evecs.col(idx[c]).cast<cplx>();
        CMatrix seeds;
        if (sys.r == 6 && idx.size() == 2 && std::abs(lam) > tol)
            seeds = maxwell_seeds(frame.xi, t1, t2, lam > 0 ? 1.0 : -1.0);
        else if (sys.r == 6 && idx.size() == 2)
            seeds = maxwell_kernel_seeds(frame.xi);
        else
            seeds = generic_seeds(sys.r, static_cast<int>(idx.size()), static_cast<int>(idx.size()));
        CMatrix aligned = align_gauge(v, seeds);
        if (lam > tol) {
            for (std::size_t k = 0; k < idx.size(); ++k) tau.push_back(lam);
            CMatrix merged(sys.r, pos.cols() + aligned.cols());
            merged << pos, aligned;
            pos = merged;
        } else if (lam < -tol) {
            CMatrix merged(sys.r, neg.cols() + aligned.cols());
            merged << neg, aligned;
            neg = merged;
        } else {
            CMatrix merged(sys.r, ker.cols() + aligned.cols());
            merged << ker, aligned;
            ker = merged;
        }
    }

    frame.tau = std::move(tau);
    frame.pos_vectors = std::move(pos);
    frame.neg_vectors = std::move(neg);
    frame.kernel_basis = std::move(ker);
    return frame;
}

} // namespace dissipscat::symbol
