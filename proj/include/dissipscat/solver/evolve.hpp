#ifndef DISSIPSCAT_SOLVER_EVOLVE_HPP
#define DISSIPSCAT_SOLVER_EVOLVE_HPP

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "dissipscat/core/parallel.hpp"
#include "dissipscat/solver/domain.hpp"

namespace dissipscat::solver {

// Spherical component order used throughout the solver.
enum Component { Er = 0, Et = 1, Ep = 2, Br = 3, Bt = 4, Bp = 5 };

struct ModeState {
    int m = 0;
    std::array<std::vector<cplx>, 6> u; // row-major [i * n_theta + j]
};

struct SolverState {
    double time = 0.0;
    std::vector<ModeState> modes;
};

// Modal initial data: returns the six spherical components of mode m at
// (r, theta).
using ModalField = std::function<std::array<cplx, 6>(int m, double r, double theta)>;

// Characteristic boundary data: the two incoming polarization amplitudes
// (a, b) for mode m at a wall ring node, as a function of time.
using CharForcing = std::function<std::array<cplx, 2>(int m, double t, int j_theta)>;

struct Probe {
    Vec3 point;
};

struct TrajectoryRecord {
    std::vector<double> t;
    std::vector<double> energy;
    std::vector<double> flux_inner;
    std::vector<double> flux_outer;
    // probe values: [probe][step][component], real reconstructed fields
    std::vector<std::vector<std::array<double, 6>>> probes;
    double initial_projection_norm = 0.0; // size of the BC-incompatible part at t=0
};

// Boundary ring history of the scattered modal field at r=1, used by the
// scattering-kernel quadrature.
struct BoundaryTrace {
    std::vector<double> t;
    int n_theta = 0;
    std::vector<int> modes;
    // values[(it * modes + km) * 6 + c][j]
    std::vector<std::vector<cplx>> rows;

    const cplx* row(int it, int km, int c) const {
        return rows[(static_cast<std::size_t>(it) * modes.size() + km) * 6 + c].data();
    }
};

struct RunOptions {
    double t_final = 1.0;
    std::vector<Probe> probes;
    bool record_boundary = false;
    int boundary_stride = 1;
    // wall forcing (incoming characteristic amplitudes at r=1) and outer
    // inflow (incoming amplitudes at r_max); defaults are homogeneous
    CharForcing wall_forcing;
    CharForcing outer_inflow;
    double instability_growth_tol = 1e-9; // per-step relative energy growth
};

class ExteriorSolver {
public:
    explicit ExteriorSolver(Domain domain);

    void set_initial(const ModalField& f, double t0 = 0.0);
    void set_state(SolverState s) { state_ = std::move(s); }
    const SolverState& state() const { return state_; }
    const Domain& domain() const { return dom_; }

    double energy() const;
    double wall_flux(bool outer) const;

    // advance exactly one RK4 step of size domain().dt
    void step(const RunOptions& opts);

    TrajectoryRecord run(const RunOptions& opts);
    BoundaryTrace boundary_trace() const { return trace_; }

    // real reconstructed field at a world point (bilinear in (r,theta))
    std::array<double, 6> sample_world(const Vec3& x) const;

    // L2 distance of the state from the wall condition at t=0; the state is
    // then projected onto the admissible space
    double project_wall_compatibility();

private:
    Domain dom_;
    SolverState state_;
    BoundaryTrace trace_;
    std::array<std::vector<cplx>, 6> rhs_buf_, stage_buf_;
    std::vector<cplx> k_acc_[6];

    void rhs(const ModeState& in, int m, std::array<std::vector<cplx>, 6>& out) const;
    void enforce_bc(ModeState& ms, int m, double t, const RunOptions& opts) const;
    void record_boundary_row(const RunOptions& opts);
};

struct DecayFit {
    double rate = 0.0;
    double stderr_rate = 0.0;
    int samples = 0;
};

// Least-squares slope of 0.5 * log E(t) over the trailing window; requires
// at least 50 samples after the transient cut.
DecayFit fit_decay_rate(const TrajectoryRecord& traj, double transient_fraction = 0.2);

struct ConvergenceReport {
    std::vector<int> n_r;
    std::vector<double> errors;     // max modal error against the reference
    std::vector<double> orders;     // log2(err[k-1]/err[k])
    std::vector<double> wall_seconds;
};

// Errors of the solved field against a reference modal solution at t_final,
// across a list of radial resolutions (factor-2 refinement expected).
// Raises NonMonotoneErrors if the error fails to decrease.
ConvergenceReport convergence_study(
    const DomainSpec& base, const std::vector<int>& n_r_list, double t_final,
    const ModalField& initial,
    const std::function<std::array<cplx, 6>(int m, double r, double theta, double t)>& reference,
    const CharForcing& outer_inflow = nullptr);

} // namespace dissipscat::solver

#endif
