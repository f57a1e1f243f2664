#ifndef DISSIPSCAT_SYMBOL_FACTORIZATION_HPP
#define DISSIPSCAT_SYMBOL_FACTORIZATION_HPP

#include <vector>

#include "dissipscat/symbol/boundary_space.hpp"

namespace dissipscat::symbol {

// Canonical pairs for a maximal dissipative space: vectors p_1..p_d, n_1..n_d
// with <p_i, A(nu)p_j> = delta, <n_i, A(nu)n_j> = -delta, <n_i, A(nu)p_j> = 0
// such that N minus its Ker A(nu) part is spanned by
// {p_1+n_1, ..., p_mu+n_mu, n_{mu+1}, ..., n_d}. mu counts the null
// directions of the boundary form inside N (0 strictly dissipative, d energy
// preserving).
struct PNFactorization {
    std::vector<CVector> p;
    std::vector<CVector> nvec;
    int mu = 0;
};

// Magnitudes of form eigenvalues below this (relative to the largest |A|
// scale) are treated as the radical.
inline constexpr double kRadicalTol = 1e-9;

PNFactorization factorize_boundary_space(const SystemSymbol& sys, const Vec3& nu,
                                         const BoundarySpace& N);

// Rebuild the boundary space from a factorization (span of the mu null pairs
// and the trailing n_j, plus Ker A(nu)); used by the round-trip checks.
BoundarySpace reconstruct_space(const SystemSymbol& sys, const Vec3& nu,
                                const PNFactorization& f);

struct BoundaryClassification {
    bool holds_58 = false; // N minus Ker equals Sigma_-(nu)
    bool holds_59 = false; // strictly dissipative and not equal to Sigma_-
};

BoundaryClassification classify_boundary_space(const SystemSymbol& sys, const Vec3& nu,
                                               const BoundarySpace& N);

} // namespace dissipscat::symbol

#endif
