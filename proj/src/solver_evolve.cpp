#include "dissipscat/solver/evolve.hpp"

#include <algorithm>
#include <cmath>

#include "dissipscat/core/reduce.hpp"

namespace dissipscat::solver {

namespace {

// Parity of a spherical component across the poles for azimuthal mode m:
// crossing the pole maps (theta,phi) -> (-theta, phi+pi); radial components
// pick up (-1)^m, tangential ones the opposite sign.
inline double pole_parity(int m, int comp) {
    double s = (m % 2 == 0) ? 1.0 : -1.0;
    return (comp == Er || comp == Br) ? s : -s;
}

} // namespace

ExteriorSolver::ExteriorSolver(Domain domain) : dom_(std::move(domain)) {
    const std::size_t n = static_cast<std::size_t>(dom_.spec.n_r) * dom_.spec.n_theta;
    for (int c = 0; c < 6; ++c) {
        rhs_buf_[c].assign(n, 0.0);
        stage_buf_[c].assign(n, 0.0);
        k_acc_[c].assign(n, 0.0);
    }
    state_.modes.resize(dom_.spec.modes.size());
    for (std::size_t km = 0; km < dom_.spec.modes.size(); ++km) {
        state_.modes[km].m = dom_.spec.modes[km];
        for (int c = 0; c < 6; ++c) state_.modes[km].u[c].assign(n, 0.0);
    }
}

void ExteriorSolver::set_initial(const ModalField& f, double t0) {
    state_.time = t0;
    const int nt = dom_.spec.n_theta;
    for (auto& ms : state_.modes) {
        for (int i = 0; i < dom_.spec.n_r; ++i)
            for (int j = 0; j < nt; ++j) {
                auto v = f(ms.m, dom_.r[i], dom_.theta[j]);
                for (int c = 0; c < 6; ++c) ms.u[c][static_cast<std::size_t>(i) * nt + j] = v[c];
            }
    }
}

void ExteriorSolver::rhs(const ModeState& in, int m, std::array<std::vector<cplx>, 6>& out) const {
    const int nr = dom_.spec.n_r, nt = dom_.spec.n_theta;
    const double dr = dom_.dr, dth = dom_.dtheta;
    const cplx im(0.0, static_cast<double>(m));
    const double sigma = dom_.spec.filter_strength;

    auto theta_val = [&](const std::vector<cplx>& f, int i, int j, double parity) -> cplx {
        if (j >= 0 && j < nt) return f[static_cast<std::size_t>(i) * nt + j];
        const int jm = (j < 0) ? (-1 - j) : (2 * nt - 1 - j);
        return parity * f[static_cast<std::size_t>(i) * nt + jm];
    };

    parallel_for(Exec::Parallel, nr, [&](std::int64_t i) {
        const double r = dom_.r[i];
        const double inv_r = 1.0 / r;
        // radial derivative of r*f: centered inside, one-sided at the walls
        auto dr_rf = [&](const std::vector<cplx>& f, int j) -> cplx {
            auto rf = [&](int ii) { return dom_.r[ii] * f[static_cast<std::size_t>(ii) * nt + j]; };
            if (i == 0) return (-3.0 * rf(0) + 4.0 * rf(1) - rf(2)) / (2.0 * dr);
            if (i == nr - 1)
                return (3.0 * rf(nr - 1) - 4.0 * rf(nr - 2) + rf(nr - 3)) / (2.0 * dr);
            return (rf(static_cast<int>(i) + 1) - rf(static_cast<int>(i) - 1)) / (2.0 * dr);
        };

        for (int j = 0; j < nt; ++j) {
            const std::size_t idx = static_cast<std::size_t>(i) * nt + j;
            const double st = dom_.sin_theta[j];
            const double inv_rs = inv_r / st;

            // d/dtheta of sin(theta)*f: the product flips the component
            // parity across the pole
            auto dth_sf = [&](const std::vector<cplx>& f, int comp) -> cplx {
                const double par = -pole_parity(m, comp);
                auto sf = [&](int jj) -> cplx {
                    if (jj >= 0 && jj < nt)
                        return dom_.sin_theta[jj] * f[static_cast<std::size_t>(i) * nt + jj];
                    const int jm = (jj < 0) ? (-1 - jj) : (2 * nt - 1 - jj);
                    return par * dom_.sin_theta[jm] * f[static_cast<std::size_t>(i) * nt + jm];
                };
                return (sf(j + 1) - sf(j - 1)) / (2.0 * dth);
            };
            auto dth_f = [&](const std::vector<cplx>& f, int comp) -> cplx {
                const double par = pole_parity(m, comp);
                return (theta_val(f, static_cast<int>(i), j + 1, par) -
                        theta_val(f, static_cast<int>(i), j - 1, par)) /
                       (2.0 * dth);
            };

            out[Er][idx] = inv_rs * (dth_sf(in.u[Bp], Bp) - im * in.u[Bt][idx]);
            out[Et][idx] = inv_rs * im * in.u[Br][idx] - inv_r * dr_rf(in.u[Bp], j);
            out[Ep][idx] = inv_r * (dr_rf(in.u[Bt], j) - dth_f(in.u[Br], Br));
            out[Br][idx] = -(inv_rs * (dth_sf(in.u[Ep], Ep) - im * in.u[Et][idx]));
            out[Bt][idx] = -(inv_rs * im * in.u[Er][idx]) + inv_r * dr_rf(in.u[Ep], j);
            out[Bp][idx] = -(inv_r * (dr_rf(in.u[Et], j) - dth_f(in.u[Er], Er)));

            if (sigma > 0.0) {
                for (int c = 0; c < 6; ++c) {
                    const auto& f = in.u[c];
                    // 4th-difference filter, O(h^3) consistent
                    if (i >= 2 && i <= nr - 3) {
                        cplx d4r = f[idx - 2 * static_cast<std::size_t>(nt)] -
                                   4.0 * f[idx - nt] + 6.0 * f[idx] - 4.0 * f[idx + nt] +
                                   f[idx + 2 * static_cast<std::size_t>(nt)];
                        out[c][idx] -= (sigma / (16.0 * dr)) * d4r;
                    }
                    const double par = pole_parity(m, c);
                    cplx d4t = theta_val(f, static_cast<int>(i), j - 2, par) -
                               4.0 * theta_val(f, static_cast<int>(i), j - 1, par) +
                               6.0 * f[idx] - 4.0 * theta_val(f, static_cast<int>(i), j + 1, par) +
                               theta_val(f, static_cast<int>(i), j + 2, par);
                    out[c][idx] -= (sigma / (16.0 * dth)) * d4t;
                }
            }
        }
    });
}

void ExteriorSolver::enforce_bc(ModeState& ms, int m, double t, const RunOptions& opts) const {
    const int nr = dom_.spec.n_r, nt = dom_.spec.n_theta;
    const double rfl = wall_reflection_coefficient(dom_.spec.wall, dom_.spec.epsilon);
    const int km = static_cast<int>(&ms - state_.modes.data());
    (void)km;

    // inner wall r = 1: incoming amplitudes (a-, b-) are set from the
    // outgoing ones plus any incident-wave forcing
    for (int j = 0; j < nt; ++j) {
        cplx& et = ms.u[Et][j];
        cplx& ep = ms.u[Ep][j];
        cplx& bt = ms.u[Bt][j];
        cplx& bp = ms.u[Bp][j];
        const cplx a_out = et - bp;
        const cplx b_out = ep + bt;
        cplx fa = 0.0, fb = 0.0;
        if (opts.wall_forcing) {
            auto f = opts.wall_forcing(m, t, j);
            fa = f[0];
            fb = f[1];
        }
        const cplx a_in = rfl * a_out + fa;
        const cplx b_in = rfl * b_out + fb;
        et = 0.5 * (a_out + a_in);
        bp = 0.5 * (a_in - a_out);
        ep = 0.5 * (b_out + b_in);
        bt = 0.5 * (b_out - b_in);
    }

    // outer wall r = r_max: incoming amplitudes are (a+, b+)
    const std::size_t off = static_cast<std::size_t>(nr - 1) * nt;
    for (int j = 0; j < nt; ++j) {
        cplx& et = ms.u[Et][off + j];
        cplx& ep = ms.u[Ep][off + j];
        cplx& bt = ms.u[Bt][off + j];
        cplx& bp = ms.u[Bp][off + j];
        const cplx a_out = et + bp; // a- leaves the domain here
        const cplx b_out = ep - bt; // b-
        cplx a_in = 0.0, b_in = 0.0;
        if (dom_.spec.outer == OuterKind::Reflect) {
            a_in = -a_out;
            b_in = -b_out;
        } else if (opts.outer_inflow) {
            auto f = opts.outer_inflow(m, t, j);
            a_in = f[0];
            b_in = f[1];
        }
        et = 0.5 * (a_in + a_out);
        bp = 0.5 * (a_out - a_in);
        ep = 0.5 * (b_in + b_out);
        bt = 0.5 * (b_in - b_out);
    }
}

double ExteriorSolver::energy() const {
    const int nr = dom_.spec.n_r, nt = dom_.spec.n_theta;
    const double two_pi = 6.283185307179586476925287;
    std::vector<double> contrib;
    contrib.reserve(state_.modes.size() * static_cast<std::size_t>(nr) * nt);
    for (const auto& ms : state_.modes) {
        const double mult = (ms.m == 0) ? 1.0 : 2.0; // conjugate partner of m>0
        for (int i = 0; i < nr; ++i) {
            const double wr = (i == 0 || i == nr - 1) ? 0.5 * dom_.dr : dom_.dr;
            const double geom = dom_.r[i] * dom_.r[i] * wr * dom_.dtheta * two_pi * mult;
            for (int j = 0; j < nt; ++j) {
                const std::size_t idx = static_cast<std::size_t>(i) * nt + j;
                double s = 0.0;
                for (int c = 0; c < 6; ++c) s += std::norm(ms.u[c][idx]);
                contrib.push_back(s * geom * dom_.sin_theta[j]);
            }
        }
    }
    return tree_sum(contrib);
}

double ExteriorSolver::wall_flux(bool outer) const {
    const int nr = dom_.spec.n_r, nt = dom_.spec.n_theta;
    const double two_pi = 6.283185307179586476925287;
    const int i = outer ? nr - 1 : 0;
    const double r2 = dom_.r[i] * dom_.r[i];
    std::vector<double> contrib;
    contrib.reserve(state_.modes.size() * nt);
    for (const auto& ms : state_.modes) {
        const double mult = (ms.m == 0) ? 1.0 : 2.0;
        for (int j = 0; j < nt; ++j) {
            const std::size_t idx = static_cast<std::size_t>(i) * nt + j;
            // phi-averaged E_theta B_phi - E_phi B_theta of the real field
            double val = (ms.u[Et][idx] * std::conj(ms.u[Bp][idx]) -
                          ms.u[Ep][idx] * std::conj(ms.u[Bt][idx]))
                             .real();
            double sgn = outer ? -1.0 : 1.0; // wall normal points out of the domain
            contrib.push_back(sgn * 2.0 * mult * val * r2 * dom_.sin_theta[j] * dom_.dtheta *
                              two_pi);
        }
    }
    return tree_sum(contrib);
}

void ExteriorSolver::step(const RunOptions& opts) {
    const double dt = dom_.dt;
    const double t0 = state_.time;
    for (auto& ms : state_.modes) {
        const int m = ms.m;
        ModeState work = ms;

        enforce_bc(work, m, t0, opts);
        ModeState base = work;

        rhs(work, m, rhs_buf_); // k1
        for (int c = 0; c < 6; ++c) {
            k_acc_[c] = rhs_buf_[c];
            for (std::size_t idx = 0; idx < work.u[c].size(); ++idx)
                work.u[c][idx] = base.u[c][idx] + 0.5 * dt * rhs_buf_[c][idx];
        }
        enforce_bc(work, m, t0 + 0.5 * dt, opts);

        rhs(work, m, rhs_buf_); // k2
        for (int c = 0; c < 6; ++c)
            for (std::size_t idx = 0; idx < work.u[c].size(); ++idx) {
                k_acc_[c][idx] += 2.0 * rhs_buf_[c][idx];
                work.u[c][idx] = base.u[c][idx] + 0.5 * dt * rhs_buf_[c][idx];
            }
        enforce_bc(work, m, t0 + 0.5 * dt, opts);

        rhs(work, m, rhs_buf_); // k3
        for (int c = 0; c < 6; ++c)
            for (std::size_t idx = 0; idx < work.u[c].size(); ++idx) {
                k_acc_[c][idx] += 2.0 * rhs_buf_[c][idx];
                work.u[c][idx] = base.u[c][idx] + dt * rhs_buf_[c][idx];
            }
        enforce_bc(work, m, t0 + dt, opts);

        rhs(work, m, rhs_buf_); // k4
        for (int c = 0; c < 6; ++c)
            for (std::size_t idx = 0; idx < ms.u[c].size(); ++idx)
                ms.u[c][idx] =
                    base.u[c][idx] +
                    (dt / 6.0) * (k_acc_[c][idx] + rhs_buf_[c][idx]);
        enforce_bc(ms, m, t0 + dt, opts);
    }
    state_.time = t0 + dt;
}

void ExteriorSolver::record_boundary_row(const RunOptions& opts) {
    const int nt = dom_.spec.n_theta;
    trace_.t.push_back(state_.time);
    for (const auto& ms : state_.modes)
        for (int c = 0; c < 6; ++c) {
            std::vector<cplx> row(nt);
            for (int j = 0; j < nt; ++j) row[j] = ms.u[c][j];
            trace_.rows.push_back(std::move(row));
        }
    (void)opts;
}

TrajectoryRecord ExteriorSolver::run(const RunOptions& opts) {
    TrajectoryRecord rec;
    rec.initial_projection_norm = project_wall_compatibility();

    trace_ = BoundaryTrace{};
    trace_.n_theta = dom_.spec.n_theta;
    trace_.modes = dom_.spec.modes;

    const int steps = static_cast<int>(std::ceil((opts.t_final - 1e-12) / dom_.dt));
    rec.probes.resize(opts.probes.size());
    const double e_init = energy();
    double e_prev = e_init;

    auto record = [&]() {
        rec.t.push_back(state_.time);
        rec.energy.push_back(energy());
        rec.flux_inner.push_back(wall_flux(false));
        rec.flux_outer.push_back(wall_flux(true));
        for (std::size_t p = 0; p < opts.probes.size(); ++p)
            rec.probes[p].push_back(sample_world(opts.probes[p].point));
    };
    record();
    if (opts.record_boundary) record_boundary_row(opts);

    const bool monitor = !opts.wall_forcing;
    for (int k = 0; k < steps; ++k) {
        step(opts);
        record();
        if (opts.record_boundary && ((k + 1) % opts.boundary_stride == 0))
            record_boundary_row(opts);
        const double e_now = rec.energy.back();
        if (monitor && e_now > e_prev + opts.instability_growth_tol * std::max(e_init, 1e-300))
            throw InstabilityDetected("energy grew by " + std::to_string(e_now - e_prev) +
                                      " at t = " + std::to_string(state_.time));
        e_prev = e_now;
    }
    return rec;
}

std::array<double, 6> ExteriorSolver::sample_world(const Vec3& x) const {
    const int nr = dom_.spec.n_r, nt = dom_.spec.n_theta;
    std::array<double, 6> out{};
    const double r = norm(x);
    if (r < dom_.r.front() - 1e-12 || r > dom_.r.back() + 1e-12) return out;
    const Vec3 xh = x / r;
    const double ct = std::clamp(dot(xh, dom_.spec.axis), -1.0, 1.0);
    const double th = std::acos(ct);
    const double phi = std::atan2(dot(xh, dom_.t2), dot(xh, dom_.t1));

    const double fi = std::clamp((r - 1.0) / dom_.dr, 0.0, static_cast<double>(nr - 1));
    int i0 = std::min(static_cast<int>(fi), nr - 2);
    const double ai = fi - i0;
    const double fj = std::clamp(th / dom_.dtheta - 0.5, 0.0, static_cast<double>(nt - 1));
    int j0 = std::min(static_cast<int>(fj), nt - 2);
    const double aj = fj - j0;

    // spherical components of the real field: m = 0 contributes its real
    // part, m > 0 contributes u_m e^{i m phi} plus the conjugate partner
    double sph[6] = {0, 0, 0, 0, 0, 0};
    for (const auto& ms : state_.modes) {
        cplx phase = std::polar(1.0, ms.m * phi);
        const double mult = (ms.m == 0) ? 1.0 : 2.0;
        for (int c = 0; c < 6; ++c) {
            auto v = [&](int ii, int jj) { return ms.u[c][static_cast<std::size_t>(ii) * nt + jj]; };
            cplx interp = (1 - ai) * ((1 - aj) * v(i0, j0) + aj * v(i0, j0 + 1)) +
                          ai * ((1 - aj) * v(i0 + 1, j0) + aj * v(i0 + 1, j0 + 1));
            sph[c] += mult * (interp * phase).real();
        }
    }
    const double sp = std::sin(phi), cp = std::cos(phi);
    const Vec3 rhat = xh;
    const Vec3 that = std::cos(th) * (cp * dom_.t1 + sp * dom_.t2) - std::sin(th) * dom_.spec.axis;
    const Vec3 phat = -sp * dom_.t1 + cp * dom_.t2;
    Vec3 E = sph[Er] * rhat + sph[Et] * that + sph[Ep] * phat;
    Vec3 B = sph[Br] * rhat + sph[Bt] * that + sph[Bp] * phat;
    return {E.x, E.y, E.z, B.x, B.y, B.z};
}

double ExteriorSolver::project_wall_compatibility() {
    const int nt = dom_.spec.n_theta;
    double before = 0.0;
    std::vector<ModeState> saved = state_.modes;
    RunOptions bare;
    for (auto& ms : state_.modes) enforce_bc(ms, ms.m, state_.time, bare);
    for (std::size_t km = 0; km < state_.modes.size(); ++km) {
        const double mult = (state_.modes[km].m == 0) ? 1.0 : 2.0;
        for (int c = 0; c < 6; ++c)
            for (int j = 0; j < nt; ++j) {
                const cplx diff = state_.modes[km].u[c][j] - saved[km].u[c][j];
                before += mult * std::norm(diff) * dom_.sin_theta[j] * dom_.dtheta;
            }
    }
    return std::sqrt(before);
}

DecayFit fit_decay_rate(const TrajectoryRecord& traj, double transient_fraction) {
    DecayFit fit;
    if (traj.t.size() < 2) throw WindowTooShort("fit_decay_rate: empty trajectory");
    const double t_cut = traj.t.front() +
                         transient_fraction * (traj.t.back() - traj.t.front());
    std::vector<double> ts, ys;
    for (std::size_t k = 0; k < traj.t.size(); ++k) {
        if (traj.t[k] < t_cut) continue;
        if (traj.energy[k] <= 0.0) continue;
        ts.push_back(traj.t[k]);
        ys.push_back(0.5 * std::log(traj.energy[k]));
    }
    fit.samples = static_cast<int>(ts.size());
    if (fit.samples < 50)
        throw WindowTooShort("fit_decay_rate: need at least 50 samples after the transient");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(ts.size());
    for (std::size_t k = 0; k < ts.size(); ++k) {
        sx += ts[k];
        sy += ys[k];
        sxx += ts[k] * ts[k];
        sxy += ts[k] * ys[k];
    }
    const double denom = n * sxx - sx * sx;
    fit.rate = (n * sxy - sx * sy) / denom;
    double ss = 0.0;
    const double b0 = (sy - fit.rate * sx) / n;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        const double rres = ys[k] - (fit.rate * ts[k] + b0);
        ss += rres * rres;
    }
    fit.stderr_rate = std::sqrt(ss / std::max(1.0, n - 2.0) / (sxx - sx * sx / n));
    return fit;
}

ConvergenceReport convergence_study(
    const DomainSpec& base, const std::vector<int>& n_r_list, double t_final,
    const ModalField& initial,
    const std::function<std::array<cplx, 6>(int m, double r, double theta, double t)>& reference,
    const CharForcing& outer_inflow) {
    if (n_r_list.size() < 2)
        throw InvalidSpec("convergence_study: need at least two resolutions");
    ConvergenceReport rep;
    for (int nr : n_r_list) {
        DomainSpec spec = base;
        spec.n_r = nr;
        spec.n_theta = std::max(8, base.n_theta * nr / base.n_r);
        Domain dom = build_domain(spec);
        ExteriorSolver sol(dom);
        sol.set_initial(initial);
        RunOptions opts;
        opts.t_final = t_final;
        opts.outer_inflow = outer_inflow;
        auto t_start = std::chrono::steady_clock::now();
        sol.run(opts);
        auto t_end = std::chrono::steady_clock::now();

        double err = 0.0;
        const auto& st = sol.state();
        for (const auto& ms : st.modes)
            for (int i = 0; i < spec.n_r; ++i)
                for (int j = 0; j < spec.n_theta; ++j) {
                    auto exact = reference(ms.m, dom.r[i], dom.theta[j], st.time);
                    for (int c = 0; c < 6; ++c)
                        err = std::max(err,
                                       std::abs(ms.u[c][static_cast<std::size_t>(i) * spec.n_theta + j] -
                                                exact[c]));
                }
        rep.n_r.push_back(nr);
        rep.errors.push_back(err);
        rep.wall_seconds.push_back(
            std::chrono::duration<double>(t_end - t_start).count());
    }
    for (std::size_t k = 1; k < rep.errors.size(); ++k) {
        if (rep.errors[k] >= rep.errors[k - 1])
            throw NonMonotoneErrors("convergence_study: error did not decrease at n_r = " +
                                    std::to_string(rep.n_r[k]));
        rep.orders.push_back(std::log2(rep.errors[k - 1] / rep.errors[k]));
    }
    return rep;
}

} // namespace dissipscat::solver
