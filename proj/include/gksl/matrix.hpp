#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace gksl {

using cplx = std::complex<double>;

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct invalid_dimension_error : error {
    using error::error;
};
struct dimension_mismatch_error : error {
    using error::error;
};
struct precondition_error : error {
    using error::error;
};
struct state_domain_error : error {
    using error::error;
};
struct integration_error : error {
    using error::error;
};

/// Dense square complex matrix, row-major storage. All operators in this
/// library act on C^n with n small (qubits, qutrits, a few levels), so no
/// sparse or blocked paths exist.
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    explicit ComplexMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n) {
        if (n < 1) throw invalid_dimension_error("matrix dimension must be >= 1");
    }

    static ComplexMatrix identity(int n) {
        ComplexMatrix m(n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix zero(int n) { return ComplexMatrix(n); }

    int dim() const { return n_; }

    cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    cplx operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

    const std::vector<cplx>& data() const { return a_; }
    std::vector<cplx>& data() { return a_; }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        check_same_dim(o);
        for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        check_same_dim(o);
        for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    ComplexMatrix& operator*=(cplx s) {
        for (auto& v : a_) v *= s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(ComplexMatrix a, double s) { return a *= cplx(s, 0.0); }
    friend ComplexMatrix operator*(double s, ComplexMatrix a) { return a *= cplx(s, 0.0); }
    friend ComplexMatrix operator-(ComplexMatrix a) { return a *= cplx(-1.0, 0.0); }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        a.check_same_dim(b);
        const int n = a.n_;
        ComplexMatrix c(n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                const cplx aik = a(i, k);
                if (aik == cplx{}) continue;
                for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    ComplexMatrix adjoint() const {
        ComplexMatrix m(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) m(j, i) = std::conj((*this)(i, j));
        return m;
    }

    cplx trace() const {
        cplx t{};
        for (int i = 0; i < n_; ++i) t += (*this)(i, i);
        return t;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : a_) m = std::max(m, std::abs(v));
        return m;
    }

    /// Hilbert-Schmidt (Frobenius) norm sqrt(Tr(A^dag A)).
    double hs_norm() const {
        double s = 0.0;
        for (const auto& v : a_) s += std::norm(v);
        return std::sqrt(s);
    }

    bool all_finite() const {
        for (const auto& v : a_)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        return true;
    }

    double hermiticity_defect() const {
        double m = 0.0;
        for (int i = 0; i < n_; ++i)
            for (int j = i; j < n_; ++j)
                m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        return m;
    }

    bool is_hermitian(double tol = 1e-10) const { return hermiticity_defect() <= tol; }

    void check_same_dim(const ComplexMatrix& o) const {
        if (n_ != o.n_)
            throw dimension_mismatch_error("matrix dimensions differ: " + std::to_string(n_) +
                                           " vs " + std::to_string(o.n_));
    }

private:
    int n_ = 0;
    std::vector<cplx> a_;
};

struct EigenSystem {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // columns are eigenvectors
};

/// Hermitian eigensolver: cyclic complex Jacobi sweeps, iterated until the
/// off-diagonal Frobenius norm drops below 1e-14 * ||A||_F (hard cap on
/// sweeps). Deterministic, no external dependencies; plenty for n <= 8.
inline EigenSystem eigh(const ComplexMatrix& a_in, double rel_tol = 1e-14) {
    if (!a_in.is_hermitian(1e-9 * std::max(1.0, a_in.max_abs())))
        throw precondition_error("eigh requires a Hermitian matrix");
    const int n = a_in.dim();
    ComplexMatrix a = a_in;
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale = std::max(a.hs_norm(), 1e-300);
    const double tol = rel_tol * scale;

    auto off_norm = [&]() {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) s += std::norm(a(i, j));
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < 100 && off_norm() > tol; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                // 2x2 Hermitian rotation zeroing a(p,q):
                // G = [[c, -conj(s)], [s, c]] with s carrying the phase of apq.
                const double absapq = std::abs(apq);
                const cplx phase = apq / absapq;
                const double theta = 0.5 * std::atan2(2.0 * absapq, app - aqq);
                const double c = std::cos(theta);
                const cplx s = std::sin(theta) * std::conj(phase);

                // G is the identity outside the (p,q) plane, with
                // G(p,p) = c, G(p,q) = -conj(s), G(q,p) = s, G(q,q) = c.
                for (int k = 0; k < n; ++k) {  // A <- A G
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp + s * akq;
                    a(k, q) = -std::conj(s) * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {  // A <- G^dag A
                    const cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk + std::conj(s) * aqk;
                    a(q, k) = -s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {  // V <- V G
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp + s * vkq;
                    v(k, q) = -std::conj(s) * vkp + c * vkq;
                }
            }
        }
    }

    EigenSystem es;
    es.values.resize(n);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::vector<double> diag(n);
    for (int i = 0; i < n; ++i) diag[i] = a(i, i).real();
    std::sort(order.begin(), order.end(), [&](int x, int y) { return diag[x] < diag[y]; });
    es.vectors = ComplexMatrix(n);
    for (int j = 0; j < n; ++j) {
        es.values[j] = diag[order[j]];
        for (int i = 0; i < n; ++i) es.vectors(i, j) = v(i, order[j]);
    }
    return es;
}

inline double min_eigenvalue(const ComplexMatrix& a) { return eigh(a).values.front(); }

}  // namespace gksl
