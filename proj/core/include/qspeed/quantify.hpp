#pragma once

// Correlation and mixedness measures: Wootters concurrence, PPT
// separability, von Neumann entropy (base 2) and mutual information.

#include "qspeed/states.hpp"

namespace qspeed {

// C = max(0, l1 - l2 - l3 - l4), li the descending square roots of the
// eigenvalues of sqrt(rho) rho~ sqrt(rho), rho~ = (sy(x)sy) rho* (sy(x)sy).
double concurrence(const DensityMatrix& rho);

// Peres-Horodecki: separable iff min eigenvalue of the partial transpose is
// >= -1e-9 (necessary and sufficient for two qubits). Exact-boundary states
// are classified as separable.
bool is_separable_ppt(const DensityMatrix& rho);

// -sum lambda log2 lambda with 0 log 0 = 0; accepts 2x2 or 4x4 Hermitian
// PSD unit-trace input. Throws std::domain_error on eigenvalue < -1e-9.
double entropy_vn(const CMat& m);
double entropy_vn(const DensityMatrix& rho);

// I = S(rho_A) + S(rho_B) - S(rho_AB), in bits.
double mutual_information(const DensityMatrix& rho);

struct MeasureReport {
    double concurrence;
    double entropy_ab;
    double entropy_a;
    double entropy_b;
    double mutual_info;  // exactly entropy_a + entropy_b - entropy_ab
    bool separable;
};

MeasureReport measure_report(const DensityMatrix& rho);

}  // namespace qspeed
