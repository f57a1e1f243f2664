#ifndef DISSIPSCAT_TREP_FREE_EVOLVE_HPP
#define DISSIPSCAT_TREP_FREE_EVOLVE_HPP

#include "dissipscat/trep/grid_field.hpp"

namespace dissipscat::trep {

// Support policy for the spectral evolution: Strict raises WrapAround when
// the light cone of the declared support would touch the box boundary;
// Periodic skips the check for data that is meant to wrap (plane-wave
// oracles and the like).
enum class SupportPolicy { Strict, Periodic };

// Spectral free evolution u(t) = exp(t G0) on the periodic grid: per
// discrete frequency the symbol is applied through its spectral projectors,
// so the map is unitary on the grid.
GridField free_evolve(const GridField& f, double t,
                      SupportPolicy policy = SupportPolicy::Strict);

// Removal of the Ker A(xi) (longitudinal) component per frequency; the
// discrete counterpart of projecting onto (Ker G0)-perp. Idempotent.
GridField ac_project(const GridField& f);

} // namespace dissipscat::trep

#endif
