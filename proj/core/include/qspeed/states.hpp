#pragma once

// State constructors: the named mixed-state families, Bell states and the
// deterministic separable-state sampler.

#include <cstdint>

#include "qspeed/linalg.hpp"

namespace qspeed {

// Unit-norm two-qubit pure state in the |00>,|01>,|10>,|11> basis.
struct PureState {
    std::array<Complex, 4> amps{};

    double norm() const;
    CMat projector() const;  // |psi><psi|
};

// 4x4 Hermitian, unit-trace, PSD density matrix.
class DensityMatrix {
public:
    // Validates Hermiticity (1e-10), trace (1e-10), spectrum >= -1e-9 and
    // finiteness; throws std::invalid_argument otherwise.
    static DensityMatrix from_matrix(const CMat& m);
    static DensityMatrix from_pure(const PureState& psi);
    // Skips validation; for outputs of operations that preserve the
    // invariants by construction (unitary conjugation, convex mixing).
    static DensityMatrix unchecked(const CMat& m);

    const CMat& mat() const { return mat_; }
    double purity() const;  // tr(rho^2)

private:
    explicit DensityMatrix(const CMat& m) : mat_(m) {}
    CMat mat_;
};

enum class Family { werner, gisin, rho3, product_mixture, pure_phi, pure_ent };

// param is the mixing weight x (werner/gisin/rho3) or a (product_mixture) in
// [0,1], the amplitude alpha in [0,1] for pure_phi (state alpha|11> +
// sqrt(1-alpha^2)|00>), or the angle gamma in [0, pi/2] for pure_ent
// (cos(gamma)|10> - sin(gamma)|01>).
struct FamilySpec {
    Family family;
    double param;
};

const char* family_name(Family f);
// Accepts the names used by the CLI; throws std::invalid_argument otherwise.
Family family_from_name(const char* name);

DensityMatrix build_family(const FamilySpec& spec);

enum class BellKind { phi_plus, phi_minus, psi_plus, psi_minus };

PureState bell_state(BellKind kind);

struct SeparableSample {
    DensityMatrix state;
    int num_terms;           // K, number of pure-product terms mixed
    std::uint64_t seed_tag;  // initial PRNG stream state for this sample
};

// Mixture of K pure product states, K uniform in {1..max_terms}, flat
// Dirichlet weights, Bloch-sphere-uniform factors. Bit-for-bit deterministic
// in (seed, index).
SeparableSample sample_separable(std::uint64_t seed, std::uint64_t index, int max_terms);

}  // namespace qspeed
