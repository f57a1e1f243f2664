#include "dissipscat/trep/free_evolve.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <vector>

#include "dissipscat/core/parallel.hpp"
#include "dissipscat/trep/radon.hpp"

namespace dissipscat::trep {

namespace {

struct SpectralField {
    int n = 0;
    double extent = 0.0;
    // six complex spectra, layout [(ix*n + iy)*n + iz]
    std::vector<std::vector<cplx>> hat;
};

SpectralField forward_fft(const GridField& g) {
    const int n = g.nx();
    SpectralField sf;
    sf.n = n;
    sf.extent = g.extent();
    sf.hat.resize(6);
    const std::size_t total = g.nodes();
    std::vector<cplx> buf(total);
    for (int c = 0; c < 6; ++c) {
        const auto& src = g.component(c);
        for (std::size_t i = 0; i < total; ++i) buf[i] = cplx(src[i], 0.0);
        fftw_plan plan = fftw_plan_dft_3d(
            n, n, n, reinterpret_cast<fftw_complex*>(buf.data()),
            reinterpret_cast<fftw_complex*>(buf.data()), FFTW_FORWARD, FFTW_ESTIMATE);
        fftw_execute(plan);
        fftw_destroy_plan(plan);
        sf.hat[c] = buf;
    }
    return sf;
}

GridField inverse_fft(SpectralField& sf, double time_stamp) {
    const int n = sf.n;
    GridField g(n, n, n, sf.extent);
    g.time_stamp = time_stamp;
    const double scale = 1.0 / static_cast<double>(sf.hat[0].size());
    for (int c = 0; c < 6; ++c) {
        fftw_plan plan = fftw_plan_dft_3d(
            n, n, n, reinterpret_cast<fftw_complex*>(sf.hat[c].data()),
            reinterpret_cast<fftw_complex*>(sf.hat[c].data()), FFTW_BACKWARD, FFTW_ESTIMATE);
        fftw_execute(plan);
        fftw_destroy_plan(plan);
        auto& dst = g.component(c);
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = sf.hat[c][i].real() * scale;
    }
    return g;
}

struct CVec3 {
    cplx x, y, z;
};

CVec3 cross_rc(const Vec3& a, const CVec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

// Apply either exp(i t A(xi)) (evolve) or the ac projector at one frequency.
// The symbol acts as A(xi)(E,B) = (xi x B, -xi x E); its square is the
// transverse projector and the kernel is the longitudinal pair.
void apply_symbol_map(SpectralField& sf, double t, bool project_only) {
    const int n = sf.n;
    const double k0 = 2.0 * 3.14159265358979323846 / sf.extent;
    parallel_for(Exec::Parallel, static_cast<std::int64_t>(n) * n * n, [&](std::int64_t idx) {
        const int iz = static_cast<int>(idx % n);
        const int iy = static_cast<int>((idx / n) % n);
        const int ix = static_cast<int>(idx / (static_cast<std::int64_t>(n) * n));
        auto freq = [&](int i) { return (i <= n / 2) ? i : i - n; };
        Vec3 xi{k0 * freq(ix), k0 * freq(iy), k0 * freq(iz)};
        const double klen = norm(xi);
        CVec3 E{sf.hat[0][idx], sf.hat[1][idx], sf.hat[2][idx]};
        CVec3 B{sf.hat[3][idx], sf.hat[4][idx], sf.hat[5][idx]};
        if (klen < 1e-14) {
            if (project_only) {
                // zero frequency is pure kernel content
                for (int c = 0; c < 6; ++c) sf.hat[c][idx] = 0.0;
            }
            return;
        }
        const Vec3 kh = xi / klen;
        // longitudinal (kernel) parts
        const cplx el = kh.x * E.x + kh.y * E.y + kh.z * E.z;
        const cplx bl = kh.x * B.x + kh.y * B.y + kh.z * B.z;
        CVec3 Et{E.x - el * kh.x, E.y - el * kh.y, E.z - el * kh.z};
        CVec3 Bt{B.x - bl * kh.x, B.y - bl * kh.y, B.z - bl * kh.z};
        if (project_only) {
            sf.hat[0][idx] = Et.x; sf.hat[1][idx] = Et.y; sf.hat[2][idx] = Et.z;
            sf.hat[3][idx] = Bt.x; sf.hat[4][idx] = Bt.y; sf.hat[5][idx] = Bt.z;
            return;
        }
        // A u = (kh x B, -kh x E) on the transverse part; exp(i t A) =
        // P0 + cos(klen t) Pi + i sin(klen t) A on the transverse subspace
        const double ph = klen * t;
        const cplx cph(std::cos(ph), 0.0), isph(0.0, std::sin(ph));
        CVec3 aE = cross_rc(kh, Bt);
        CVec3 aB = cross_rc(kh, Et);
        aB.x = -aB.x; aB.y = -aB.y; aB.z = -aB.z;
        sf.hat[0][idx] = el * kh.x + cph * Et.x + isph * aE.x;
        sf.hat[1][idx] = el * kh.y + cph * Et.y + isph * aE.y;
        sf.hat[2][idx] = el * kh.z + cph * Et.z + isph * aE.z;
        sf.hat[3][idx] = bl * kh.x + cph * Bt.x + isph * aB.x;
        sf.hat[4][idx] = bl * kh.y + cph * Bt.y + isph * aB.y;
        sf.hat[5][idx] = bl * kh.z + cph * Bt.z + isph * aB.z;
    });
}

} // namespace

GridField free_evolve(const GridField& f, double t, SupportPolicy policy) {
    if (policy == SupportPolicy::Strict &&
        f.support_radius(kSupportTol) + std::abs(t) + kSupportMargin * f.spacing() >
            0.5 * f.extent())
        throw WrapAround("free_evolve: light cone of the support reaches the box boundary");
    if (t == 0.0) return f;
    SpectralField sf = forward_fft(f);
    apply_symbol_map(sf, t, false);
    return inverse_fft(sf, f.time_stamp + t);
}

GridField ac_project(const GridField& f) {
    SpectralField sf = forward_fft(f);
    apply_symbol_map(sf, 0.0, true);
    return inverse_fft(sf, f.time_stamp);
}

} // namespace dissipscat::trep
