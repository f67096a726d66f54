#include "qspeed/quantify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qspeed/dynamics.hpp"

namespace qspeed {

double concurrence(const DensityMatrix& rho) {
    const CMat yy = kron(pauli_y(), pauli_y());
    const CMat spin_flipped = yy * rho.mat().conj() * yy;
    const CMat root = sqrt_psd(rho.mat());
    // sqrt(rho) rho~ sqrt(rho) is Hermitian PSD and shares its spectrum with
    // the non-Hermitian rho rho~.
    CMat m = root * spin_flipped * root;
    auto ev = eigvals_hermitian(m);
    std::sort(ev.begin(), ev.end());
    // Zero out eigenvalues at the numerical noise floor before the square
    // root: sqrt amplifies an O(eps) error on an exact zero to O(sqrt(eps)).
    const double floor = 1e-12 * std::max(ev[3], 0.0) + 1e-15;
    for (double& v : ev) v = v > floor ? std::sqrt(v) : 0.0;
    const double c = ev[3] - ev[2] - ev[1] - ev[0];  // ascending: ev[3] is the largest
    return std::clamp(c, 0.0, 1.0);
}

bool is_separable_ppt(const DensityMatrix& rho) {
    const auto ev = eigvals_hermitian(partial_transpose(rho.mat(), Subsystem::B));
    return ev[0] >= -1e-9;
}

double entropy_vn(const CMat& m) {
    const auto ev = eigvals_hermitian(m);
    double s = 0.0;
    for (int i = 0; i < m.dim(); ++i) {
        const double l = ev[i];
        if (l < -1e-9) throw std::domain_error("entropy_vn: negative eigenvalue");
        if (l > 0.0) s -= l * std::log2(l);
    }
    return std::max(s, 0.0);
}

double entropy_vn(const DensityMatrix& rho) { return entropy_vn(rho.mat()); }

double mutual_information(const DensityMatrix& rho) {
    const double sa = entropy_vn(partial_trace(rho.mat(), Subsystem::B));
    const double sb = entropy_vn(partial_trace(rho.mat(), Subsystem::A));
    return sa + sb - entropy_vn(rho.mat());
}

MeasureReport measure_report(const DensityMatrix& rho) {
    MeasureReport r{};
    r.concurrence = concurrence(rho);
    r.entropy_ab = entropy_vn(rho.mat());
    r.entropy_a = entropy_vn(partial_trace(rho.mat(), Subsystem::B));
    r.entropy_b = entropy_vn(partial_trace(rho.mat(), Subsystem::A));
    r.mutual_info = r.entropy_a + r.entropy_b - r.entropy_ab;
    r.separable = is_separable_ppt(rho);
    return r;
}

}  // namespace qspeed
