#pragma once

// The physical model: two spins in local unit magnetic fields, closed-form
// propagators, and every time-evolution metric (trace distance, fidelity
// analog, kickoff coefficient, energy moments, orthogonality times).
// Units: hbar = 1, |field| = 1, time in radians of precession.

#include <cmath>
#include <optional>
#include <vector>

#include "qspeed/states.hpp"

namespace qspeed {

struct Vec3 {
    double x, y, z;
};

// Polar angles of a field axis; theta in [0, pi], phi in [0, 2*pi).
struct BlochDirection {
    double theta;
    double phi;

    // Throws std::invalid_argument when outside the canonical ranges.
    static BlochDirection from_angles(double theta, double phi);
    Vec3 unit() const;
};

struct MagnetConfig {
    BlochDirection dir_a;
    BlochDirection dir_b;
};

MagnetConfig config_xx();   // both fields along +x
MagnetConfig config_zmz();  // fields along +z and -z

CMat pauli_x();
CMat pauli_y();
CMat pauli_z();
// sigma . n
CMat spin_axis(const BlochDirection& dir);

// H = (sigma.n_a) (x) I + I (x) (sigma.n_b); Hermitian by construction.
CMat hamiltonian(const MagnetConfig& config);

// u(t) = cos(t) I - i sin(t) sigma.n
CMat propagator_single(const BlochDirection& dir, double t);

// U(t) rho U(t)^dagger with U = u_a (x) u_b; period pi in t.
DensityMatrix evolve(const DensityMatrix& rho0, const MagnetConfig& config, double t);

// D(rho, sigma) = 1/2 tr|rho - sigma|
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// F = tr(rho0 U rho0 U^dagger) / tr(rho0^2); 1 at t = 0.
double fidelity(const DensityMatrix& rho0, const MagnetConfig& config, double t);

struct EnergyMoments {
    double mean;      // tr(rho H)
    double variance;  // tr(rho H^2) - mean^2, clamped at 0
};

EnergyMoments energy_moments(const DensityMatrix& rho, const MagnetConfig& config);

// Short-time decay coefficient 1/tau^2 of F ~ exp(-t^2/tau^2):
// rate = (tr(rho^2 H^2) - tr(rho H rho H)) / tr(rho^2).
struct KickoffResult {
    double rate;                   // >= 0
    std::optional<double> tau_sq;  // empty when stationary (rate = 0 within 1e-12)

    bool stationary() const { return !tau_sq.has_value(); }
};

KickoffResult kickoff(const DensityMatrix& rho, const MagnetConfig& config);

// Orthogonality time of alpha|11> + sqrt(1-alpha^2)|00> from the closed form
// t_perp = arccot sqrt(<(sigma.n_a)(sigma.n_b)>). Throws std::domain_error
// naming the violated constraint when the config does not satisfy
// <sigma.n_a> = <sigma.n_b> = 0 or the correlator is negative.
double t_perp_pure(double alpha, const MagnetConfig& config);

// Grid scan over (0, pi] plus golden-section refinement; smallest t with
// |<psi|U(t)|psi>| < 1e-8, or nullopt when no grid point drops below 1e-3.
std::optional<double> t_perp_numeric(const PureState& psi, const MagnetConfig& config, int resolution);

struct TimeGrid {
    double t_max = M_PI;
    int points = 721;  // captures pi/4 and pi/2 exactly as grid points

    std::vector<double> times() const;
};

struct TimeSeries {
    std::vector<double> times;
    std::vector<double> values;
};

// D(rho0, rho(t)) over the grid.
TimeSeries distance_series(const DensityMatrix& rho0, const MagnetConfig& config, const TimeGrid& grid);

// D(t = pi/4) - D(t = pi/2)
double d_dif(const DensityMatrix& rho0, const MagnetConfig& config);

}  // namespace qspeed
