#include "qspeed/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace qspeed {

BlochDirection BlochDirection::from_angles(double theta, double phi) {
    if (!(theta >= 0.0 && theta <= M_PI)) throw std::invalid_argument("BlochDirection: theta must be in [0, pi]");
    if (!(phi >= 0.0 && phi < 2.0 * M_PI)) throw std::invalid_argument("BlochDirection: phi must be in [0, 2*pi)");
    return BlochDirection{theta, phi};
}

Vec3 BlochDirection::unit() const {
    const double st = std::sin(theta);
    return Vec3{st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}

MagnetConfig config_xx() {
    const BlochDirection x{M_PI / 2.0, 0.0};
    return MagnetConfig{x, x};
}

MagnetConfig config_zmz() {
    return MagnetConfig{BlochDirection{0.0, 0.0}, BlochDirection{M_PI, 0.0}};
}

CMat pauli_x() {
    CMat m(2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

CMat pauli_y() {
    CMat m(2);
    m(0, 1) = Complex(0.0, -1.0);
    m(1, 0) = Complex(0.0, 1.0);
    return m;
}

CMat pauli_z() {
    CMat m(2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

CMat spin_axis(const BlochDirection& dir) {
    const Vec3 n = dir.unit();
    CMat m(2);
    m(0, 0) = n.z;
    m(1, 1) = -n.z;
    m(0, 1) = Complex(n.x, -n.y);
    m(1, 0) = Complex(n.x, n.y);
    return m;
}

CMat hamiltonian(const MagnetConfig& config) {
    const CMat id = CMat::identity(2);
    return kron(spin_axis(config.dir_a), id) + kron(id, spin_axis(config.dir_b));
}

CMat propagator_single(const BlochDirection& dir, double t) {
    CMat m = spin_axis(dir);
    m *= Complex(0.0, -std::sin(t));
    m += Complex(std::cos(t)) * CMat::identity(2);
    return m;
}

DensityMatrix evolve(const DensityMatrix& rho0, const MagnetConfig& config, double t) {
    const CMat u = kron(propagator_single(config.dir_a, t), propagator_single(config.dir_b, t));
    return DensityMatrix::unchecked(u * rho0.mat() * u.adjoint());
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    const CMat d = rho.mat() - sigma.mat();
    double v = 0.5 * sum_abs_eigvals(d);
    return std::min(v, 1.0);
}

double fidelity(const DensityMatrix& rho0, const MagnetConfig& config, double t) {
    const double p = rho0.purity();
    if (p <= 1e-12) throw std::domain_error("fidelity: vanishing purity");
    const DensityMatrix rt = evolve(rho0, config, t);
    double overlap = 0.0;  // tr(rho0 rho_t), real for Hermitian factors
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) overlap += (rho0.mat()(i, j) * rt.mat()(j, i)).real();
    return overlap / p;
}

EnergyMoments energy_moments(const DensityMatrix& rho, const MagnetConfig& config) {
    const CMat h = hamiltonian(config);
    const CMat rh = rho.mat() * h;
    const double mean = rh.trace().real();
    const double m2 = (rh * h).trace().real();
    double var = m2 - mean * mean;
    if (var < 0.0) var = 0.0;
    return EnergyMoments{mean, var};
}

KickoffResult kickoff(const DensityMatrix& rho, const MagnetConfig& config) {
    const CMat h = hamiltonian(config);
    const CMat rh = rho.mat() * h;
    const double num = (rho.mat() * rh * h).trace().real() - (rh * rh).trace().real();
    double rate = num / rho.purity();
    if (rate < 0.0) rate = 0.0;
    if (rate <= 1e-12) return KickoffResult{0.0, std::nullopt};
    return KickoffResult{rate, 1.0 / rate};
}

namespace {

PureState phi_family_state(double alpha) {
    if (alpha < 0.0 || alpha > 1.0) throw std::invalid_argument("t_perp_pure: alpha must be in [0,1]");
    PureState p;
    p.amps[3] = alpha;                          // |11>
    p.amps[0] = std::sqrt(1.0 - alpha * alpha); // |00>
    return p;
}

double expectation(const PureState& psi, const CMat& op) {
    Complex e{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) e += std::conj(psi.amps[i]) * op(i, j) * psi.amps[j];
    return e.real();
}

}  // namespace

double t_perp_pure(double alpha, const MagnetConfig& config) {
    const PureState psi = phi_family_state(alpha);
    const CMat id = CMat::identity(2);
    const CMat sa = spin_axis(config.dir_a);
    const CMat sb = spin_axis(config.dir_b);
    const double ma = expectation(psi, kron(sa, id));
    const double mb = expectation(psi, kron(id, sb));
    if (std::abs(ma) > 1e-10) throw std::domain_error("t_perp_pure: <sigma.n_a> != 0");
    if (std::abs(mb) > 1e-10) throw std::domain_error("t_perp_pure: <sigma.n_b> != 0");
    double corr = expectation(psi, kron(sa, sb));
    if (corr < -1e-10) throw std::domain_error("t_perp_pure: <(sigma.n_a)(sigma.n_b)> < 0");
    if (corr < 0.0) corr = 0.0;
    return M_PI / 2.0 - std::atan(std::sqrt(corr));  // arccot
}

std::optional<double> t_perp_numeric(const PureState& psi, const MagnetConfig& config, int resolution) {
    if (resolution < 100) throw std::invalid_argument("t_perp_numeric: resolution must be >= 100");
    auto overlap = [&](double t) {
        const CMat u = kron(propagator_single(config.dir_a, t), propagator_single(config.dir_b, t));
        Complex v{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) v += std::conj(psi.amps[i]) * u(i, j) * psi.amps[j];
        return std::abs(v);
    };

    const double dt = M_PI / resolution;
    bool any_low = false;
    for (int k = 1; k <= resolution; ++k) {
        const double t = k * dt;
        const double f = overlap(t);
        if (f >= 1e-3) continue;
        any_low = true;
        // Golden-section refinement of the local minimum around t.
        double lo = t - dt;
        double hi = std::min(t + dt, M_PI);
        const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
        double c = hi - gr * (hi - lo);
        double d = lo + gr * (hi - lo);
        double fc = overlap(c), fd = overlap(d);
        while (hi - lo > 1e-12) {
            if (fc < fd) {
                hi = d;
                d = c;
                fd = fc;
                c = hi - gr * (hi - lo);
                fc = overlap(c);
            } else {
                lo = c;
                c = d;
                fc = fd;
                d = lo + gr * (hi - lo);
                fd = overlap(d);
            }
        }
        const double tm = (lo + hi) / 2.0;
        if (overlap(tm) < 1e-8) return tm;
    }
    (void)any_low;
    return std::nullopt;
}

std::vector<double> TimeGrid::times() const {
    if (points < 2) throw std::invalid_argument("TimeGrid: need at least 2 points");
    std::vector<double> t(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) t[static_cast<std::size_t>(i)] = t_max * i / (points - 1);
    return t;
}

TimeSeries distance_series(const DensityMatrix& rho0, const MagnetConfig& config, const TimeGrid& grid) {
    TimeSeries s;
    s.times = grid.times();
    s.values.reserve(s.times.size());
    for (double t : s.times) s.values.push_back(trace_distance(rho0, evolve(rho0, config, t)));
    return s;
}

double d_dif(const DensityMatrix& rho0, const MagnetConfig& config) {
    return trace_distance(rho0, evolve(rho0, config, M_PI / 4.0)) -
           trace_distance(rho0, evolve(rho0, config, M_PI / 2.0));
}

}  // namespace qspeed
