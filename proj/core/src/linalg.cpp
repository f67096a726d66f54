#include "qspeed/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qspeed {

namespace {

void check_dim(int dim) {
    if (dim != 2 && dim != 4) throw std::invalid_argument("CMat dimension must be 2 or 4");
}

}  // namespace

CMat::CMat(int dim) : dim_(dim) { check_dim(dim); }

CMat CMat::identity(int dim) {
    CMat m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

CMat CMat::zero(int dim) { return CMat(dim); }

CMat& CMat::operator+=(const CMat& o) {
    if (dim_ != o.dim_) throw std::invalid_argument("dimension mismatch");
    for (int i = 0; i < dim_ * dim_; ++i) a_[i] += o.a_[i];
    return *this;
}

CMat& CMat::operator-=(const CMat& o) {
    if (dim_ != o.dim_) throw std::invalid_argument("dimension mismatch");
    for (int i = 0; i < dim_ * dim_; ++i) a_[i] -= o.a_[i];
    return *this;
}

CMat& CMat::operator*=(Complex s) {
    for (int i = 0; i < dim_ * dim_; ++i) a_[i] *= s;
    return *this;
}

CMat operator*(const CMat& a, const CMat& b) {
    if (a.dim_ != b.dim_) throw std::invalid_argument("dimension mismatch");
    const int n = a.dim_;
    CMat c(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

CMat CMat::adjoint() const {
    CMat m(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) m(i, j) = std::conj((*this)(j, i));
    return m;
}

CMat CMat::transpose() const {
    CMat m(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) m(i, j) = (*this)(j, i);
    return m;
}

CMat CMat::conj() const {
    CMat m(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) m(i, j) = std::conj((*this)(i, j));
    return m;
}

Complex CMat::trace() const {
    Complex t{};
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double CMat::max_abs_diff(const CMat& o) const {
    if (dim_ != o.dim_) throw std::invalid_argument("dimension mismatch");
    double d = 0.0;
    for (int i = 0; i < dim_ * dim_; ++i) d = std::max(d, std::abs(a_[i] - o.a_[i]));
    return d;
}

double CMat::hermiticity_defect() const {
    double d = 0.0;
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return d;
}

double CMat::frobenius() const {
    double s = 0.0;
    for (int i = 0; i < dim_ * dim_; ++i) s += std::norm(a_[i]);
    return std::sqrt(s);
}

bool CMat::is_finite() const {
    for (int i = 0; i < dim_ * dim_; ++i)
        if (!std::isfinite(a_[i].real()) || !std::isfinite(a_[i].imag())) return false;
    return true;
}

CMat kron(const CMat& a, const CMat& b) {
    if (a.dim() != 2 || b.dim() != 2) throw std::invalid_argument("kron expects two 2x2 factors");
    CMat m(4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) m(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return m;
}

namespace {

constexpr double kHermTol = 1e-10;
constexpr double kOffDiagStop = 1e-13;
constexpr int kMaxSweeps = 50;

// One complex Jacobi rotation zeroing m(p,q); optionally accumulates the
// rotation into v's columns.
void jacobi_rotate(CMat& m, CMat* v, int p, int q) {
    const Complex mpq = m(p, q);
    const double g = std::abs(mpq);
    if (g == 0.0) return;
    const Complex phase = mpq / g;
    const double app = m(p, p).real();
    const double aqq = m(q, q).real();
    const double tau = (aqq - app) / (2.0 * g);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const Complex s = phase * (t * c);

    const int n = m.dim();
    // Columns: [p q] <- [p q] * [[c, s], [-conj(s), c]]  (unitary J)
    for (int i = 0; i < n; ++i) {
        const Complex mip = m(i, p);
        const Complex miq = m(i, q);
        m(i, p) = c * mip - std::conj(s) * miq;
        m(i, q) = s * mip + c * miq;
    }
    // Rows: J^dagger * m
    for (int j = 0; j < n; ++j) {
        const Complex mpj = m(p, j);
        const Complex mqj = m(q, j);
        m(p, j) = c * mpj - s * mqj;
        m(q, j) = std::conj(s) * mpj + c * mqj;
    }
    m(p, q) = 0.0;
    m(q, p) = 0.0;
    m(p, p) = Complex(m(p, p).real(), 0.0);
    m(q, q) = Complex(m(q, q).real(), 0.0);
    if (v) {
        for (int i = 0; i < n; ++i) {
            const Complex vip = (*v)(i, p);
            const Complex viq = (*v)(i, q);
            (*v)(i, p) = c * vip - std::conj(s) * viq;
            (*v)(i, q) = s * vip + c * viq;
        }
    }
}

double offdiag_frobenius(const CMat& m) {
    double s = 0.0;
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j)
            if (i != j) s += std::norm(m(i, j));
    return std::sqrt(s);
}

// Jacobi sweeps; v may be null when only values are needed. Returns the
// diagonalized copy.
CMat jacobi_diagonalize(CMat m, CMat* v) {
    const int n = m.dim();
    int sweeps = 0;
    while (offdiag_frobenius(m) >= kOffDiagStop) {
        if (++sweeps > kMaxSweeps) throw std::runtime_error("Jacobi eigensolver did not converge");
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) jacobi_rotate(m, v, p, q);
    }
    return m;
}

// Largest real root of z^3 + a2 z^2 + a1 z + a0.
double cubic_largest_root(double a2, double a1, double a0) {
    const double p = a1 - a2 * a2 / 3.0;
    const double q = a0 - a2 * a1 / 3.0 + 2.0 * a2 * a2 * a2 / 27.0;
    const double shift = -a2 / 3.0;
    const double disc = q * q / 4.0 + p * p * p / 27.0;
    if (disc > 0.0) {
        const double sq = std::sqrt(disc);
        const double u = std::cbrt(-q / 2.0 + sq);
        const double w = std::cbrt(-q / 2.0 - sq);
        return u + w + shift;
    }
    if (p >= 0.0) return shift;  // triple/near-triple root
    const double r = 2.0 * std::sqrt(-p / 3.0);
    double arg = 3.0 * q / (p * r);
    arg = std::clamp(arg, -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    return r * std::cos(phi) + shift;  // cos branch with the largest value
}

// Closed-form eigenvalues of a Hermitian 4x4 via the characteristic quartic,
// polished by Newton. Returns false when the residual check fails and the
// caller should fall back to Jacobi.
bool quartic_eigvals4(const CMat& m, std::array<double, 4>& out) {
    const double mu = m.trace().real() / 4.0;
    // Power sums of B = m - mu*I.
    double p2 = 0.0;
    Complex b[4][4];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            b[i][j] = m(i, j);
            if (i == j) b[i][j] -= mu;
            p2 += std::norm(b[i][j]);
        }
    if (p2 < 1e-28) {
        out = {mu, mu, mu, mu};
        return true;
    }
    Complex b2[4][4];
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            Complex s{};
            for (int k = 0; k < 4; ++k) s += b[i][k] * b[k][j];
            b2[i][j] = s;
            if (i != j) b2[j][i] = std::conj(s);
        }
    double p3 = 0.0, p4 = 0.0;
    for (int i = 0; i < 4; ++i) {
        p3 += (b2[i][i] * b[i][i]).real();
        p4 += std::norm(b2[i][i]);
        for (int j = i + 1; j < 4; ++j) {
            p3 += 2.0 * (b2[i][j] * std::conj(b[i][j])).real();
            p4 += 2.0 * std::norm(b2[i][j]);
        }
    }
    // Characteristic polynomial x^4 + A x^2 + B x + C (e1 = 0).
    const double scale = std::sqrt(p2);
    const double A = -p2 / 2.0 / (scale * scale);
    const double B = -p3 / 3.0 / (scale * scale * scale);
    const double C = (p2 * p2 / 2.0 - p4) / 4.0 / (scale * scale * scale * scale);

    double r[4];
    if (std::abs(B) < 1e-14) {
        // Biquadratic.
        const double disc = std::max(0.0, A * A - 4.0 * C);
        const double sq = std::sqrt(disc);
        const double z1 = std::max(0.0, (-A + sq) / 2.0);
        const double z2 = std::max(0.0, (-A - sq) / 2.0);
        r[0] = -std::sqrt(z1);
        r[1] = -std::sqrt(z2);
        r[2] = std::sqrt(z2);
        r[3] = std::sqrt(z1);
    } else {
        // Ferrari: resolvent z^3 + 2A z^2 + (A^2 - 4C) z - B^2 = 0, z = p^2.
        double z = cubic_largest_root(2.0 * A, A * A - 4.0 * C, -B * B);
        z = std::max(z, 0.0);
        const double pp = std::sqrt(z);
        if (pp < 1e-14) return false;
        const double q1 = (A + z - B / pp) / 2.0;
        const double q2 = (A + z + B / pp) / 2.0;
        // (x^2 + pp x + q1)(x^2 - pp x + q2)
        const double d1 = std::max(0.0, pp * pp - 4.0 * q1);
        const double d2 = std::max(0.0, pp * pp - 4.0 * q2);
        r[0] = (-pp - std::sqrt(d1)) / 2.0;
        r[1] = (-pp + std::sqrt(d1)) / 2.0;
        r[2] = (pp - std::sqrt(d2)) / 2.0;
        r[3] = (pp + std::sqrt(d2)) / 2.0;
    }
    // Newton polish on the quartic.
    for (double& x : r) {
        for (int it = 0; it < 2; ++it) {
            const double f = ((x * x + A) * x + B) * x + C;
            const double fp = (4.0 * x * x + 2.0 * A) * x + B;
            if (std::abs(fp) > 1e-12) x -= f / fp;
        }
    }
    std::sort(r, r + 4);
    // Near-double roots leave plain Newton with ~sqrt(eps) error: f' vanishes
    // there. Refine each close pair through the critical point of f between
    // them and the local quadratic model f ~ f(mid) + f''(mid)(x-mid)^2/2.
    for (int i = 0; i < 3; ++i) {
        if (r[i + 1] - r[i] >= 1e-4) continue;
        double mid = 0.5 * (r[i] + r[i + 1]);
        bool usable = true;
        for (int it = 0; it < 3 && usable; ++it) {
            const double fp = (4.0 * mid * mid + 2.0 * A) * mid + B;
            const double fpp = 12.0 * mid * mid + 2.0 * A;
            if (std::abs(fpp) < 1e-8) usable = false;  // near-triple root
            else mid -= fp / fpp;
        }
        const double fpp = 12.0 * mid * mid + 2.0 * A;
        if (!usable || std::abs(fpp) < 1e-8) continue;
        const double fmid = ((mid * mid + A) * mid + B) * mid + C;
        const double rad = -2.0 * fmid / fpp;
        // Below the coefficient noise floor the pair is an exact double root:
        // collapsing to the critical point keeps the error linear in the
        // coefficient noise, while a noisy symmetric split would inject a
        // spurious +-sqrt(noise) (e.g. pushing a PSD spectrum negative).
        const double delta = rad > 1e-13 ? std::sqrt(rad) : 0.0;
        r[i] = mid - delta;
        r[i + 1] = mid + delta;
    }
    std::sort(r, r + 4);
    // Residual check against the power sums.
    double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;
    for (double x : r) {
        s1 += x;
        s2 += x * x;
        s3 += x * x * x;
        s4 += x * x * x * x;
    }
    const double tol = 1e-10;
    if (std::abs(s1) > tol || std::abs(s2 - 1.0) > tol ||
        std::abs(s3 - p3 / (scale * scale * scale)) > tol ||
        std::abs(s4 - p4 / (scale * scale * scale * scale)) > tol)
        return false;
    for (int i = 0; i < 4; ++i) out[i] = r[i] * scale + mu;
    return true;
}

}  // namespace

EigenDecomposition eig_hermitian(const CMat& m) {
    if (!m.is_finite()) throw std::invalid_argument("eig_hermitian: non-finite input");
    if (m.hermiticity_defect() > kHermTol) throw std::invalid_argument("eig_hermitian: input is not Hermitian");
    const int n = m.dim();
    CMat v = CMat::identity(n);
    CMat d = jacobi_diagonalize(m, &v);

    std::array<int, 4> order{0, 1, 2, 3};
    std::stable_sort(order.begin(), order.begin() + n,
                     [&](int i, int j) { return d(i, i).real() < d(j, j).real(); });

    EigenDecomposition e;
    e.dim = n;
    e.vectors = CMat(n);
    for (int k = 0; k < n; ++k) {
        e.values[k] = d(order[k], order[k]).real();
        for (int i = 0; i < n; ++i) e.vectors(i, k) = v(i, order[k]);
    }
    return e;
}

std::array<double, 4> eigvals_hermitian(const CMat& m) {
    std::array<double, 4> out{};
    if (m.dim() == 2) {
        const double a = m(0, 0).real();
        const double d = m(1, 1).real();
        const double h = std::abs(m(0, 1));
        const double mid = (a + d) / 2.0;
        const double rad = std::sqrt((a - d) * (a - d) / 4.0 + h * h);
        out[0] = mid - rad;
        out[1] = mid + rad;
        return out;
    }
    if (quartic_eigvals4(m, out)) return out;
    CMat d = jacobi_diagonalize(m, nullptr);
    for (int i = 0; i < 4; ++i) out[i] = d(i, i).real();
    std::sort(out.begin(), out.end());
    return out;
}

CMat sqrt_psd(const CMat& m) {
    EigenDecomposition e = eig_hermitian(m);
    for (int i = 0; i < e.dim; ++i) {
        if (e.values[i] < -1e-9) throw std::domain_error("sqrt_psd: input is not positive semidefinite");
        if (e.values[i] < 0.0) e.values[i] = 0.0;
    }
    CMat r(m.dim());
    for (int k = 0; k < e.dim; ++k) {
        const double s = std::sqrt(e.values[k]);
        for (int i = 0; i < e.dim; ++i)
            for (int j = 0; j < e.dim; ++j) r(i, j) += s * e.vectors(i, k) * std::conj(e.vectors(j, k));
    }
    return r;
}

CMat partial_trace(const CMat& m, Subsystem traced_out) {
    if (m.dim() != 4) throw std::invalid_argument("partial_trace expects a 4x4 matrix");
    CMat r(2);
    if (traced_out == Subsystem::B) {
        for (int a = 0; a < 2; ++a)
            for (int ap = 0; ap < 2; ++ap)
                for (int b = 0; b < 2; ++b) r(a, ap) += m(2 * a + b, 2 * ap + b);
    } else {
        for (int b = 0; b < 2; ++b)
            for (int bp = 0; bp < 2; ++bp)
                for (int a = 0; a < 2; ++a) r(b, bp) += m(2 * a + b, 2 * a + bp);
    }
    return r;
}

CMat partial_transpose(const CMat& m, Subsystem sub) {
    if (m.dim() != 4) throw std::invalid_argument("partial_transpose expects a 4x4 matrix");
    CMat r(4);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int ap = 0; ap < 2; ++ap)
                for (int bp = 0; bp < 2; ++bp) {
                    if (sub == Subsystem::A)
                        r(2 * a + b, 2 * ap + bp) = m(2 * ap + b, 2 * a + bp);
                    else
                        r(2 * a + b, 2 * ap + bp) = m(2 * a + bp, 2 * ap + b);
                }
    return r;
}

double sum_abs_eigvals(const CMat& m) {
    const auto ev = eigvals_hermitian(m);
    double s = 0.0;
    for (int i = 0; i < m.dim(); ++i) s += std::abs(ev[i]);
    return s;
}

}  // namespace qspeed
