#ifndef DISSIPSCAT_SYMBOL_BOUNDARY_SPACE_HPP
#define DISSIPSCAT_SYMBOL_BOUNDARY_SPACE_HPP

#include "dissipscat/core/rng.hpp"
#include "dissipscat/symbol/eigenframe.hpp"
#include "dissipscat/symbol/system.hpp"

namespace dissipscat::symbol {

// Candidate boundary space N(x) at a wall point with unit normal nu (the
// normal entering the obstacle, nu = -x/|x| on the unit sphere).
struct BoundarySpace {
    Vec3 point{};
    Vec3 nu;
    CMatrix basis; // r x dim, columns span N(x)
    int dim = 0;
};

// Impedance family: {(E,B) : (1+eps)E_tan + nu ^ B_tan = 0} + Ker A(nu).
// Written with the wall normal nu entering the obstacle this is the
// dissipative side of the impedance condition; at eps = 0 the space is
// exactly Sigma_-(nu) + Ker A(nu).
BoundarySpace impedance_space(const Vec3& nu, double eps);

// Perfect-conductor wall E_tan = 0 (energy preserving, mu = d).
BoundarySpace pec_space(const Vec3& nu);

struct DissipativityReport {
    bool dissipative = false;
    bool maximal = false;
    double worst_form_value = 0.0; // max of <A(nu)u,u> over the unit sphere of N
};

DissipativityReport check_maximal_dissipative(const SystemSymbol& sys, const Vec3& nu,
                                              const BoundarySpace& N);

// Test/CLI helper: a random maximal dissipative space with prescribed radical
// dimension mu, built from unitarily mixed Sigma+- frames.
BoundarySpace random_max_dissipative_space(const SystemSymbol& sys, const Vec3& nu, int mu,
                                           const CounterRng& rng, std::uint64_t counter);

} // namespace dissipscat::symbol

#endif
