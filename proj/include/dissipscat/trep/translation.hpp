#ifndef DISSIPSCAT_TREP_TRANSLATION_HPP
#define DISSIPSCAT_TREP_TRANSLATION_HPP

#include <array>
#include <filesystem>
#include <vector>

#include "dissipscat/core/quadrature.hpp"
#include "dissipscat/trep/grid_field.hpp"
#include "dissipscat/trep/radon.hpp"

namespace dissipscat::trep {

// Translation-representation samples k_j(s, omega), j = 1..d, on an s-grid x
// sphere-node grid, together with the polarization frames r_j(omega) used to
// produce them. Convention: k_j = (2 pi)^{-1} d/ds <(Rf)(s,omega), r_j(omega)>
// with r_j the unit eigenvectors of A(-omega) for its positive eigenvalues;
// the 1/(2 pi) constant makes the map an isometry on divergence-free data
// (for the Maxwell speeds tau = 1 no further rescaling appears).
struct TRData {
    static constexpr int d = 2;
    SGrid sgrid;
    SphereQuad sphere;
    std::vector<double> values;  // [(j*ns + is)*nw + iw]
    std::vector<double> frames;  // [(iw*d + j)*6 + c], real Maxwell frames

    double& value(int j, int is, int iw) {
        return values[(static_cast<std::size_t>(j) * sgrid.count + is) * sphere.size() + iw];
    }
    double value(int j, int is, int iw) const {
        return values[(static_cast<std::size_t>(j) * sgrid.count + is) * sphere.size() + iw];
    }
    const double* frame(int j, int iw) const {
        return frames.data() + (static_cast<std::size_t>(iw) * d + j) * 6;
    }

    double norm() const;                       // weighted L2 norm
    double mass_fraction_above(double s) const;  // L2 fraction on {s' > s}
    double mass_fraction_below(double s) const;  // L2 fraction on {s' < s}
    TRData shifted(double t) const;              // T_t: k(s - t, omega)
};

// Discrete translation representation of compactly supported grid data. The
// s-derivative uses 4th-order centered differences on a grid of the same
// spacing as the field. A caller-provided s-grid overrides the default
// support-fitted one (needed when two representations must share a grid).
TRData translation_representation(const GridField& f, int sphere_order = 16,
                                  Exec exec = Exec::Parallel,
                                  const SGrid* sgrid_override = nullptr);

struct DpmReport {
    bool member = false;
    double forbidden_fraction = 0.0;
};

enum class DpmSign { Plus, Minus };

// Support characterization of the outgoing/incoming spaces: membership in
// D_+^rho needs the representation concentrated in s >= rho/v0, membership in
// D_-^rho in s <= -rho/v0.
DpmReport dpm_support_test(const TRData& k, DpmSign sign, double rho, double tol,
                           double v0 = 1.0);

// The symmetrized moment integrals: for compactly supported data every entry
// with harmonic degree l >= a + kpow vanishes; slow tails trip the battery.
double moment_functional(const TRData& k, int a, int kpow, int l, int q, int component);

struct MomentBatteryEntry {
    int a, kpow, l, q, component;
    double value;
};

struct MomentBatteryReport {
    std::vector<MomentBatteryEntry> entries;
    double max_abs = 0.0;
    double norm = 0.0; // representation norm the entries are compared against
};

MomentBatteryReport moment_battery(const TRData& k, int a_max = 2, int k_max = 2,
                                   int l_max = 6);

// Zero the field inside |x| < radius (the extension-by-zero embedding of
// exterior data, applied on the grid).
GridField zero_inside_ball(const GridField& f, double radius);

// Relative L2 mass of the representation of P_ac J f on the support region
// of D_-^rho (s <= -rho/v0).
double dminus_defect(const GridField& exterior_field, double rho, int sphere_order = 16);

// defect of the intertwining relation R U0(t) = T_t R on a smooth packet
double intertwining_defect(const GridField& f, double t, int sphere_order = 16);

// CSV interfaces: values as "j,s,omega_index,value"; node table as
// "omega_index,ox,oy,oz,weight".
void save_trdata_csv(const TRData& k, const std::filesystem::path& values_path,
                     const std::filesystem::path& nodes_path);

} // namespace dissipscat::trep

#endif
