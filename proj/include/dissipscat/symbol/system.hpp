#ifndef DISSIPSCAT_SYMBOL_SYSTEM_HPP
#define DISSIPSCAT_SYMBOL_SYSTEM_HPP

#include <Eigen/Dense>
#include <vector>

#include "dissipscat/core/types.hpp"

namespace dissipscat::symbol {

using Matrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// First-order symmetric system u_t = sum_j A_j d_j u, together with the
// spectral bookkeeping of its symbol A(xi) = sum_j A_j xi_j: d positive
// eigenvalues (with multiplicity), d0 = dim Ker A(xi), and the minimal
// positive speed v0 over unit directions.
struct SystemSymbol {
    int n = 0; // spatial dimension
    int r = 0; // system size
    std::vector<Matrix> matrices;
    int d = 0;
    int d0 = 0;
    double v0 = 0.0;
};

// Maxwell in matrix form: A(xi)(E,B) = (xi x B, -xi x E); r=6, n=3,
// eigenvalues 0, +-|xi| each of multiplicity 2.
SystemSymbol build_maxwell_system();

Matrix symbol_at(const SystemSymbol& sys, const Vec3& xi);

// Re<A(nu)u, u>; the sesquilinear form whose sign on the boundary space
// controls the energy flux through the wall.
double boundary_form(const SystemSymbol& sys, const Vec3& nu, const CVector& u);

struct DivergenceCompatibilityReport {
    double max_product_norm = 0.0;   // max over sampled xi of |Q(xi) A(xi)|
    double max_subspace_gap = 0.0;   // max distance between Ker Q(xi) and Im A(xi)
    int kernel_dim = 0;              // dim Ker Q(xi) at the sampled directions
    bool pass = false;
};

// Verifies Q(xi)A(xi) = 0 and Ker Q(xi) = Im A(xi) for the Maxwell
// constraint operator Q(E,B) = (div E, div B), sampled over random unit xi.
DivergenceCompatibilityReport check_divergence_compatibility(const SystemSymbol& sys,
                                                             int samples = 50,
                                                             std::uint64_t seed = 7);

// Operator-norm distance between the orthogonal projectors of two subspaces
// given by (not necessarily orthonormal) column spans.
double subspace_distance(const CMatrix& span_a, const CMatrix& span_b);

// Orthonormal basis of the column span (rank decided by singular values
// below reltol * largest).
CMatrix orthonormal_span(const CMatrix& span, double reltol = 1e-9);

} // namespace dissipscat::symbol

#endif
