#ifndef DISSIPSCAT_ADS_FIELDS_HPP
#define DISSIPSCAT_ADS_FIELDS_HPP

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "dissipscat/core/parallel.hpp"
#include "dissipscat/core/types.hpp"

namespace dissipscat::ads {

// Radial profile h and its derivatives; the field family is generic in h.
struct Profile {
    virtual ~Profile() = default;
    virtual double deriv(int k, double s) const = 0; // h^{(k)}(s)
};

// h(s) = e^{r s}
struct ExponentialProfile final : Profile {
    double rate;
    explicit ExponentialProfile(double r) : rate(r) {}
    double deriv(int k, double s) const override;
};

// C-infinity bump exp(-1/(1-u^2)) on |u| < 1, u = (s - center)/halfwidth.
struct BumpProfile final : Profile {
    double center;
    double halfwidth;
    BumpProfile(double c, double hw) : center(c), halfwidth(hw) {}
    double deriv(int k, double s) const override;
};

// 2r = 1 - sqrt(1 + 4/eps) < 0, equivalently eps * r * (r-1) = 1.
double decay_rate(double eps);

struct AdsParams {
    double epsilon;
    double r;
    Vec3 axis{1.0, 0.0, 0.0};

    static AdsParams from_epsilon(double eps) { return {eps, decay_rate(eps), {1.0, 0.0, 0.0}}; }
};

struct FieldValue {
    Vec3 E;
    Vec3 B;
};

// Space-time Jacobian of (E,B): d/dt and d/dx_j of every component.
struct FieldJacobian {
    Vec3 dEdt, dBdt;
    double dE[3][3]; // dE[i][j] = d E_i / d x_j
    double dB[3][3];
};

// Incoming divergence-free pair built from h(|x|+t): E is the curl of an
// axis-aligned potential, B its time antiderivative partner.
FieldValue eval_fields(const AdsParams& p, const Profile& h, double t, const Vec3& x);
FieldValue eval_fields(const AdsParams& p, double t, const Vec3& x); // h = e^{rs}

FieldJacobian eval_jacobian(const AdsParams& p, const Profile& h, double t, const Vec3& x);

struct ResidualReport {
    double max_maxwell = 0.0;     // sup |dE/dt - curl B| and |dB/dt + curl E|
    double max_divergence = 0.0;  // sup |div E|, |div B|
    double max_boundary = 0.0;    // sup |(1+eps) E_tan - (x/|x|) ^ B_tan| on |x| = 1
    double scale = 0.0;           // sup derivative magnitude used for relative norms
    double relative() const;
};

enum class ResidualMode { Analytic, FiniteDifference };

// Sampled residuals of the Maxwell system, both divergences, and the
// impedance relation on the unit sphere. Analytic mode evaluates each side
// from its own closed form; finite-difference mode uses centered differences
// of step fd_step.
ResidualReport verify_exact_solution(const AdsParams& p, const Profile& h,
                                     std::span<const double> times,
                                     std::span<const Vec3> points,
                                     ResidualMode mode = ResidualMode::Analytic,
                                     double fd_step = 1e-4,
                                     Exec exec = Exec::Parallel);

// Convenience: n random points in 1 <= |x| <= rmax, times in [0, tmax].
ResidualReport verify_exact_solution_sampled(const AdsParams& p, int n, double rmax,
                                             double tmax, std::uint64_t seed,
                                             ResidualMode mode = ResidualMode::Analytic);

// Energy integral of |E|^2 + |B|^2 over the shell a <= |x| <= b by
// Gauss-Legendre radius x sphere quadrature.
double shell_energy(const AdsParams& p, double t, double a, double b,
                    int n_radial = 64, int sphere_order = 16);

enum class FieldChannel { E, B };

// Exponential rate of the field magnitude along the ray s*omega. With
// compensate_falloff the fit model is rate*s + q*log(s) + c, so the algebraic
// falloff prefactor cannot bias the rate; the raw two-parameter fit (false)
// sits below the rate and serves as the one-sided envelope check.
// Raises AllZeroRay if the channel vanishes identically on the ray.
double envelope_slope(const AdsParams& p, const Vec3& omega,
                      std::span<const double> radii, FieldChannel channel,
                      bool compensate_falloff = true);

// Batch kernel (serial/OpenMP): out arrays hold E1,E2,E3,B1,B2,B3 per point.
void eval_fields_batch(const AdsParams& p, const Profile& h,
                       std::span<const double> times, std::span<const Vec3> points,
                       std::span<double> out, Exec exec = Exec::Parallel);

} // namespace dissipscat::ads

#endif
