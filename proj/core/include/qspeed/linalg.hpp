#pragma once

// Dense complex linear algebra for the 2x2 / 4x4 matrices of the two-spin
// model. Self-contained: Jacobi eigensolver, PSD square root, Kronecker
// product, partial trace and partial transpose.

#include <array>
#include <complex>
#include <cstddef>

namespace qspeed {

using Complex = std::complex<double>;

// Square complex matrix of dimension 2 or 4, row-major. Basis convention for
// dim 4: |00>,|01>,|10>,|11>, qubit a is the left tensor factor, spin-up is
// |1>.
class CMat {
public:
    explicit CMat(int dim);

    static CMat identity(int dim);
    static CMat zero(int dim);

    int dim() const { return dim_; }

    Complex& operator()(int r, int c) { return a_[static_cast<std::size_t>(r * dim_ + c)]; }
    const Complex& operator()(int r, int c) const { return a_[static_cast<std::size_t>(r * dim_ + c)]; }

    CMat& operator+=(const CMat& o);
    CMat& operator-=(const CMat& o);
    CMat& operator*=(Complex s);

    friend CMat operator+(CMat a, const CMat& b) { return a += b; }
    friend CMat operator-(CMat a, const CMat& b) { return a -= b; }
    friend CMat operator*(Complex s, CMat a) { return a *= s; }
    friend CMat operator*(const CMat& a, const CMat& b);

    CMat adjoint() const;
    CMat transpose() const;
    CMat conj() const;
    Complex trace() const;

    // max_ij |a_ij - b_ij|
    double max_abs_diff(const CMat& o) const;
    // max_ij |a_ij - a_ji^*|
    double hermiticity_defect() const;
    double frobenius() const;
    bool is_finite() const;

private:
    int dim_;
    std::array<Complex, 16> a_{};
};

CMat kron(const CMat& a, const CMat& b);

struct EigenDecomposition {
    int dim = 0;
    std::array<double, 4> values{};  // ascending, first `dim` entries valid
    CMat vectors;                    // orthonormal columns, vectors.col(i) <-> values[i]

    EigenDecomposition() : vectors(2) {}
};

// Cyclic Jacobi eigendecomposition of a Hermitian matrix. Deterministic for
// identical input; throws std::invalid_argument on non-Hermitian input and
// std::runtime_error if the sweep cap is hit.
EigenDecomposition eig_hermitian(const CMat& m);

// Eigenvalues only, ascending. Dim 4 uses a polished closed-form quartic
// solve with a Jacobi fallback when the root residual check fails.
std::array<double, 4> eigvals_hermitian(const CMat& m);

// Hermitian PSD square root. Eigenvalues in [-1e-9, 0) are clamped to zero;
// anything lower throws std::domain_error.
CMat sqrt_psd(const CMat& m);

enum class Subsystem { A, B };

// Traces out `traced_out`, returning the reduced 2x2 state of the other qubit.
CMat partial_trace(const CMat& m, Subsystem traced_out);

// Transposes the indices of `sub` only.
CMat partial_transpose(const CMat& m, Subsystem sub);

// 1/2 sum |eigenvalues| is trace distance when applied to a difference of
// states; this returns the plain sum of absolute eigenvalues.
double sum_abs_eigvals(const CMat& m);

}  // namespace qspeed
