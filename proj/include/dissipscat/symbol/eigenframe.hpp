#ifndef DISSIPSCAT_SYMBOL_EIGENFRAME_HPP
#define DISSIPSCAT_SYMBOL_EIGENFRAME_HPP

#include <vector>

#include "dissipscat/symbol/system.hpp"

namespace dissipscat::symbol {

// Orthonormal eigenvectors of A(-xi): tau_1 >= ... >= tau_d > 0 with
// pos_vectors r_j, the mirrored negative-eigenvalue vectors, and a basis of
// Ker A(xi). The gauge inside each degenerate eigenspace is fixed per chart
// from the reference tangent frame (see tangent_frame); directions within
// cap_half_angle of the chart poles +-chart_axis raise DegenerateDirection.
struct EigenFrame {
    Vec3 xi;
    std::vector<double> tau;
    CMatrix pos_vectors;    // r x d, columns r_j
    CMatrix neg_vectors;    // r x d
    CMatrix kernel_basis;   // r x d0
};

inline constexpr double kFrameCapHalfAngle = 1e-3;

// Azimuthal tangent frame about chart_axis: t1 = axis x xi / |.|, t2 = t1 x xi.
// Smooth away from the two polar caps.
void tangent_frame(const Vec3& xi, const Vec3& chart_axis, Vec3& t1, Vec3& t2);

EigenFrame eigen_frame(const SystemSymbol& sys, const Vec3& xi,
                       const Vec3& chart_axis = {0.0, 0.0, 1.0});

} // namespace dissipscat::symbol

#endif
