#pragma once

#include "atomkit/units.hpp"

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace atomkit::fields {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;
using CVec3 = std::array<cplx, 3>;

// Periodic box [0, L)^dims sampled at N points per axis. Components hold
// physical-space samples in row-major order (x1 slowest).
struct SpectralGrid {
    int dims = 3;
    int N = 0;
    double L = 0;
    std::vector<std::string> names;
    std::vector<std::vector<cplx>> comps;

    SpectralGrid() = default;
    SpectralGrid(int dims, int N, double L, std::vector<std::string> names);

    std::size_t points() const;
    double h() const { return L / N; }
    double cell_volume() const;
    Vec3 x(std::size_t idx) const;
    // wave vector of FFT index idx, k_j = 2 pi n_j / L with n_j in (-N/2, N/2]
    Vec3 k(std::size_t idx) const;
    std::vector<cplx>& operator[](std::size_t c) { return comps[c]; }
    const std::vector<cplx>& operator[](std::size_t c) const { return comps[c]; }
};

// In-place unnormalized FFTs over the whole grid (forward e^{-ikx}).
void fft_forward(const SpectralGrid& g, std::vector<cplx>& a);
void fft_backward(const SpectralGrid& g, std::vector<cplx>& a);  // includes 1/points

// ---- Maxwell

struct MaxwellField {
    SpectralGrid grid;  // six components E1 E2 E3 B1 B2 B3 (real valued)
    double c = 137.035999;

    explicit MaxwellField(SpectralGrid geometry, double c);
    MaxwellField(int dims, int N, double L, double c);
    std::vector<cplx>& E(int a) { return grid.comps[a]; }
    std::vector<cplx>& B(int a) { return grid.comps[3 + a]; }
    const std::vector<cplx>& E(int a) const { return grid.comps[a]; }
    const std::vector<cplx>& B(int a) const { return grid.comps[3 + a]; }
};

using ScalarSource = std::function<double(double t, const Vec3& x)>;
using VectorSource = std::function<Vec3(double t, const Vec3& x)>;

// Real sources rho = Re(rho_amp e^{-i nu t}), j = Re(j_amp e^{-i nu t}); rho_amp follows
// from continuity.
struct HarmonicSource {
    std::array<std::vector<cplx>, 3> j_amp;  // physical-space samples
    double nu = 0;
};

struct MaxwellSources {
    ScalarSource rho;  // may be empty together with j for a free field
    VectorSource j;
    std::optional<HarmonicSource> harmonic;
    int substeps = 64;  // midpoint rule panels per propagate call
};

struct MaxwellDiagnostics {
    double energy = 0;       // (1/8 pi) int (E^2 + B^2)
    Vec3 momentum{};         // (1/4 pi c) int E x B
    double div_E_residual = 0;  // max |ik.E - 4 pi rho| / max(|k| |E|)
    double div_B_residual = 0;
};

MaxwellDiagnostics maxwell_diagnostics(const MaxwellField& f, const ScalarSource& rho = {}, double t = 0);

// Advance from t0 to t0 + dt with the exact per-mode propagator plus the Duhamel source term.
MaxwellField maxwell_propagate(const MaxwellField& f, const MaxwellSources& src, double t0, double dt);

// Plane wave E = E0 cos k(x3 - ct) e1, B = E0 cos k(x3 - ct) e2 sampled at time t; k must be a lattice value.
MaxwellField plane_wave(int N, double L, int mode, double E0, double c, double t);

// Charge density of a harmonic current, rho_amp = k.j_amp / nu in Fourier space.
std::vector<cplx> harmonic_charge(const SpectralGrid& g, const HarmonicSource& s);

// ---- free dispersive fields

enum class Dispersion { schrodinger, klein_gordon };

struct DispersionParams {
    double mass = 1;
    double c = 137.035999;
};

double dispersion_omega(Dispersion kind, double k, const DispersionParams& p);
double group_velocity(Dispersion kind, double k, const DispersionParams& p);

struct ConservedSet {
    std::vector<double> t, charge, energy;
    std::vector<Vec3> momentum;
    std::vector<Vec3> centroid;  // circular mean of |psi|^2, unwrapped in time
};

struct DispersionResult {
    SpectralGrid psi;
    ConservedSet conserved;
};

// psi(t) from psi0 (single component) by multiplying modes with e^{-i omega(k) t}; records
// conserved functionals at each of the given times.
DispersionResult free_dispersion_evolve(const SpectralGrid& psi0, Dispersion kind, const std::vector<double>& times,
                                        const DispersionParams& p = {});
DispersionResult free_dispersion_evolve(const SpectralGrid& psi0, Dispersion kind, double t,
                                        const DispersionParams& p = {});

// Gaussian packet exp(-|x-x0|^2 / (4 sigma^2) + i k*.x), unit charge.
SpectralGrid gaussian_packet(int dims, int N, double L, const Vec3& x0, double sigma, const Vec3& kstar);

// Least-squares slope of centroid coordinate `axis` against time.
double centroid_velocity(const ConservedSet& s, int axis);

// ---- radiation

struct DipoleSource {
    std::function<Vec3(double)> p;
    std::function<Vec3(double)> pddot;
};

struct HertzField {
    Vec3 E, B, S;
};

HertzField hertz_dipole(const DipoleSource& d, const Vec3& x, double t, double c);
// Total radiated power 2 |p''|^2 / (3 c^3).
double hertz_power(const Vec3& pddot, double c);

using ComplexScalarSource = std::function<cplx(double t, const Vec3& y)>;
using ComplexVectorSource = std::function<CVec3(double t, const Vec3& y)>;

struct RetardedPotentials {
    cplx phi;
    CVec3 A;
    int order = 0;  // Gauss points per dimension at convergence
};

// phi = int rho(t - |x-y|/c, y) / |x-y| dy, A = (1/c) int j(...) / |x-y| dy over |y| <= R.
RetardedPotentials retarded_potentials(const ComplexScalarSource& rho, const ComplexVectorSource& j, double R,
                                       const Vec3& x, double t, double c, double tol = 1e-8);

// ---- interface optics

enum class Polarization { perp, par };

struct FresnelResult {
    cplx r, t;
    double alpha_refracted = 0;  // NaN under total internal reflection
    bool total_internal_reflection = false;
    double R = 0, T = 0;         // reflectance, transmittance
};

FresnelResult fresnel(double alpha, double n1, double n2, Polarization pol);

// ---- classical Zeeman oscillator

// Positive frequencies; omega_plus = omega_minus + 2|omega_L| for B != 0.
struct ZeemanModes {
    double omega_pi, omega_plus, omega_minus;
};

ZeemanModes classical_zeeman_modes(double omega0, double B, const Constants& k = Constants());

// x'' + omega0^2 x = (e/c) x' x B e3 sampled every dt over [0, T]; rows are (x1, x2, x3).
std::vector<Vec3> zeeman_oscillator(double omega0, double B, const Vec3& x0, const Vec3& v0, double T,
                                    double dt, const Constants& k = Constants());

enum class PrecessionKind { orbital, spin };
double larmor_precession_rate(double B, PrecessionKind kind, const Constants& k = Constants());

// ---- snapshot export

struct NamedArray {
    std::string name;
    std::vector<double> values;
};

// Real parts of all components (imaginary parts appended as <name>.im when nonzero).
std::vector<NamedArray> snapshot_arrays(const SpectralGrid& g);
void write_csv(std::ostream& os, const SpectralGrid& g);
// Writes <base>.bin (little-endian float64, component-major) and <base>.json header.
void write_raw(const std::string& base, const SpectralGrid& g);

}  // namespace atomkit::fields
