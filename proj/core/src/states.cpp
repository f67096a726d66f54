#include "qspeed/states.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>

#include "qspeed/rng.hpp"

namespace qspeed {

double PureState::norm() const {
    double s = 0.0;
    for (const Complex& a : amps) s += std::norm(a);
    return std::sqrt(s);
}

CMat PureState::projector() const {
    CMat m(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = amps[i] * std::conj(amps[j]);
    return m;
}

DensityMatrix DensityMatrix::from_matrix(const CMat& m) {
    if (m.dim() != 4) throw std::invalid_argument("DensityMatrix: expected a 4x4 matrix");
    if (!m.is_finite()) throw std::invalid_argument("DensityMatrix: non-finite entries");
    if (m.hermiticity_defect() > 1e-10) throw std::invalid_argument("DensityMatrix: not Hermitian");
    if (std::abs(m.trace() - Complex(1.0)) > 1e-10) throw std::invalid_argument("DensityMatrix: trace is not 1");
    const auto ev = eigvals_hermitian(m);
    if (ev[0] < -1e-9) throw std::invalid_argument("DensityMatrix: negative eigenvalue");
    return DensityMatrix(m);
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
    if (std::abs(psi.norm() - 1.0) > 1e-12) throw std::invalid_argument("PureState: not unit norm");
    return DensityMatrix(psi.projector());
}

DensityMatrix DensityMatrix::unchecked(const CMat& m) { return DensityMatrix(m); }

double DensityMatrix::purity() const {
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) s += std::norm(mat_(i, j));
    return s;  // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
}

const char* family_name(Family f) {
    switch (f) {
        case Family::werner: return "werner";
        case Family::gisin: return "gisin";
        case Family::rho3: return "rho3";
        case Family::product_mixture: return "product_mixture";
        case Family::pure_phi: return "pure_phi";
        case Family::pure_ent: return "pure_ent";
    }
    return "?";
}

Family family_from_name(const char* name) {
    const std::string s(name);
    if (s == "werner") return Family::werner;
    if (s == "gisin") return Family::gisin;
    if (s == "rho3") return Family::rho3;
    if (s == "product_mixture" || s == "product-mixture") return Family::product_mixture;
    if (s == "pure_phi" || s == "pure-phi") return Family::pure_phi;
    if (s == "pure_ent" || s == "pure-ent") return Family::pure_ent;
    throw std::invalid_argument("unknown state family: " + s);
}

namespace {

// Basis indices: |00> = 0, |01> = 1, |10> = 2, |11> = 3.
CMat basis_projector(int k) {
    CMat m(4);
    m(k, k) = 1.0;
    return m;
}

}  // namespace

PureState bell_state(BellKind kind) {
    const double s = 1.0 / std::sqrt(2.0);
    PureState p;
    switch (kind) {
        case BellKind::phi_plus:
            p.amps[0] = s;
            p.amps[3] = s;
            break;
        case BellKind::phi_minus:
            p.amps[0] = s;
            p.amps[3] = -s;
            break;
        case BellKind::psi_plus:
            p.amps[1] = s;
            p.amps[2] = s;
            break;
        case BellKind::psi_minus:
            p.amps[1] = s;
            p.amps[2] = -s;
            break;
    }
    return p;
}

DensityMatrix build_family(const FamilySpec& spec) {
    const double x = spec.param;
    switch (spec.family) {
        case Family::werner: {
            if (x < 0.0 || x > 1.0) throw std::invalid_argument("werner: x must be in [0,1]");
            CMat m = bell_state(BellKind::psi_plus).projector();
            m *= x;
            m += Complex((1.0 - x) / 4.0) * CMat::identity(4);
            return DensityMatrix::unchecked(m);
        }
        case Family::gisin: {
            if (x < 0.0 || x > 1.0) throw std::invalid_argument("gisin: x must be in [0,1]");
            CMat m = bell_state(BellKind::psi_plus).projector();
            m *= x;
            m += Complex((1.0 - x) / 2.0) * (basis_projector(0) + basis_projector(3));
            return DensityMatrix::unchecked(m);
        }
        case Family::rho3: {
            if (x < 0.0 || x > 1.0) throw std::invalid_argument("rho3: x must be in [0,1]");
            CMat m = bell_state(BellKind::psi_plus).projector();
            m *= x;
            m += Complex(1.0 - x) * basis_projector(0);
            return DensityMatrix::unchecked(m);
        }
        case Family::product_mixture: {
            if (x < 0.0 || x > 1.0) throw std::invalid_argument("product_mixture: a must be in [0,1]");
            CMat m = basis_projector(3);
            m *= x;
            m += Complex(1.0 - x) * basis_projector(0);
            return DensityMatrix::unchecked(m);
        }
        case Family::pure_phi: {
            if (x < 0.0 || x > 1.0) throw std::invalid_argument("pure_phi: alpha must be in [0,1]");
            PureState p;
            p.amps[3] = x;                           // alpha |11>
            p.amps[0] = std::sqrt(1.0 - x * x);      // beta |00>, beta real >= 0
            return DensityMatrix::from_pure(p);
        }
        case Family::pure_ent: {
            if (x < 0.0 || x > M_PI / 2.0 + 1e-12) throw std::invalid_argument("pure_ent: gamma must be in [0, pi/2]");
            PureState p;
            p.amps[2] = std::cos(x);   // cos(gamma) |10>
            p.amps[1] = -std::sin(x);  // -sin(gamma) |01>
            return DensityMatrix::from_pure(p);
        }
    }
    throw std::invalid_argument("build_family: bad family");
}

SeparableSample sample_separable(std::uint64_t seed, std::uint64_t index, int max_terms) {
    if (max_terms < 1 || max_terms > 16) throw std::invalid_argument("sample_separable: max_terms must be in [1,16]");
    SplitMix64 g = SplitMix64::stream(seed, index);
    const std::uint64_t tag = g.state();

    int k = 1 + static_cast<int>(g.uniform() * max_terms);
    if (k > max_terms) k = max_terms;

    double weights[16];
    double wsum = 0.0;
    for (int i = 0; i < k; ++i) {
        weights[i] = -std::log(1.0 - g.uniform());
        wsum += weights[i];
    }

    auto random_qubit = [&g]() {
        const double cos_theta = 2.0 * g.uniform() - 1.0;
        const double phi = 2.0 * M_PI * g.uniform();
        const double theta = std::acos(cos_theta);
        CMat rho(2);
        const Complex a0 = std::cos(theta / 2.0);
        const Complex a1 = std::polar(std::sin(theta / 2.0), phi);
        rho(0, 0) = a0 * std::conj(a0);
        rho(0, 1) = a0 * std::conj(a1);
        rho(1, 0) = a1 * std::conj(a0);
        rho(1, 1) = a1 * std::conj(a1);
        return rho;
    };

    CMat m(4);
    for (int i = 0; i < k; ++i) {
        const CMat ra = random_qubit();
        const CMat rb = random_qubit();
        CMat term = kron(ra, rb);
        term *= Complex(weights[i] / wsum);
        m += term;
    }
    return SeparableSample{DensityMatrix::unchecked(m), k, tag};
}

}  // namespace qspeed
