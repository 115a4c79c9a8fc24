#pragma once

#include <cmath>
#include <vector>

#include "gksl/matrix.hpp"
#include "gksl/rng.hpp"

namespace gksl {

inline constexpr double kHermTol = 1e-10;   // Hermiticity / trace tolerance
inline constexpr double kPsdTol = 1e-8;     // eigenvalue floor for states at rest
inline constexpr double kBasisTol = 1e-12;  // trace-orthogonality of basis elements

/// Hermitian matrix, validated on construction (max-norm defect <= 1e-10).
class HermitianOperator {
public:
    HermitianOperator() = default;
    explicit HermitianOperator(ComplexMatrix m) : m_(std::move(m)) {
        if (!m_.all_finite()) throw precondition_error("Hermitian operator has non-finite entries");
        if (m_.hermiticity_defect() > kHermTol)
            throw precondition_error("matrix is not Hermitian within 1e-10");
    }
    const ComplexMatrix& matrix() const { return m_; }
    int dim() const { return m_.dim(); }

private:
    ComplexMatrix m_;
};

/// Density matrix: Hermitian, unit trace within 1e-10, smallest eigenvalue
/// >= -1e-8.
class DensityMatrix {
public:
    DensityMatrix() = default;
    explicit DensityMatrix(ComplexMatrix m) : op_(std::move(m)) { validate(); }
    explicit DensityMatrix(HermitianOperator op) : op_(std::move(op)) { validate(); }

    const ComplexMatrix& matrix() const { return op_.matrix(); }
    int dim() const { return op_.dim(); }

private:
    void validate() const {
        const auto& m = op_.matrix();
        if (std::abs(m.trace() - cplx(1.0, 0.0)) > kHermTol)
            throw state_domain_error("density matrix trace differs from 1 by more than 1e-10");
        if (min_eigenvalue(m) < -kPsdTol)
            throw state_domain_error("density matrix has eigenvalue below -1e-8");
    }
    HermitianOperator op_;
};

inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a * b - b * a;
}

inline ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a * b + b * a;
}

/// Hilbert-Schmidt inner product Tr(A^dag B).
inline cplx hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
    a.check_same_dim(b);
    cplx s{};
    const int n = a.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += std::conj(a(i, j)) * b(i, j);
    return s;
}

inline double hs_norm(const ComplexMatrix& a) { return a.hs_norm(); }

/// Orthogonal Hermitian basis of the traceless sector: Pauli matrices for
/// n = 2, generalized Gell-Mann matrices for n >= 3, normalized so that
/// Tr(lambda_a lambda_b) = 2 delta_ab. Ordering follows the standard su(3)
/// tables: for each column k the off-diagonal pairs (j,k) in symmetric /
/// antisymmetric order, then the (k-1)-th diagonal element, so that for n = 3
/// the elements are exactly lambda_1 .. lambda_8 with lambda_3 = diag(1,-1,0).
class Basis {
public:
    int dim = 0;                          // Hilbert-space dimension n
    std::vector<ComplexMatrix> elements;  // n^2 - 1 Hermitian matrices
    double normalization = 2.0;           // c in Tr(l_a l_b) = c delta_ab

    int count() const { return static_cast<int>(elements.size()); }
};

inline Basis standard_basis(int n) {
    if (n < 2) throw invalid_dimension_error("basis requires n >= 2");
    Basis b;
    b.dim = n;
    for (int k = 1; k < n; ++k) {
        for (int j = 0; j < k; ++j) {
            ComplexMatrix sym(n), anti(n);
            sym(j, k) = 1.0;
            sym(k, j) = 1.0;
            anti(j, k) = cplx(0.0, -1.0);
            anti(k, j) = cplx(0.0, 1.0);
            b.elements.push_back(sym);
            b.elements.push_back(anti);
        }
        ComplexMatrix d(n);
        const double f = std::sqrt(2.0 / (static_cast<double>(k) * (k + 1)));
        for (int j = 0; j < k; ++j) d(j, j) = f;
        d(k, k) = -f * k;
        b.elements.push_back(d);
    }
    return b;
}

/// Totally antisymmetric structure constants f_abc of the chosen basis,
/// computed from the trace formula f_abc = Tr([l_a,l_b] l_c) / (4i).
/// Note: this yields the standard-table signs; e.g. for su(3) the trace
/// formula gives f_367 = -1/2 (rates depend only on f^2, so either sign
/// convention produces identical dynamics).
class StructureConstants {
public:
    int dim = 0;  // Hilbert-space dimension n
    int d = 0;    // n^2 - 1
    std::vector<double> f;

    double operator()(int a, int b, int c) const {
        return f[(static_cast<size_t>(a) * d + b) * d + c];
    }
    double& at(int a, int b, int c) { return f[(static_cast<size_t>(a) * d + b) * d + c]; }
};

inline StructureConstants structure_constants(const Basis& basis) {
    const int d = basis.count();
    for (int a = 0; a < d; ++a) {
        if (std::abs(basis.elements[a].trace()) > kBasisTol)
            throw precondition_error("basis element is not traceless");
        for (int bidx = 0; bidx < d; ++bidx) {
            const cplx g = hs_inner(basis.elements[a], basis.elements[bidx]);
            const double want = (a == bidx) ? basis.normalization : 0.0;
            if (std::abs(g - cplx(want, 0.0)) > 1e-9)
                throw precondition_error("basis is not trace-orthogonal with c = 2");
        }
    }
    StructureConstants sc;
    sc.dim = basis.dim;
    sc.d = d;
    sc.f.assign(static_cast<size_t>(d) * d * d, 0.0);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            const ComplexMatrix ab = commutator(basis.elements[a], basis.elements[b]);
            for (int c = 0; c < d; ++c) {
                const cplx t = (ab * basis.elements[c]).trace() / cplx(0.0, 4.0);
                if (std::abs(t.imag()) > 1e-10)
                    throw precondition_error("structure constant is not real");
                sc.at(a, b, c) = t.real();
            }
        }
    return sc;
}

/// Coefficients r_a = Tr(X l_a) of the traceless part of X; the inverse map
/// is X = (Tr X / n) I + (1/2) sum_a r_a l_a.
inline std::vector<double> coefficients(const ComplexMatrix& x, const Basis& basis) {
    if (x.dim() != basis.dim) throw dimension_mismatch_error("coefficients: dimension mismatch");
    std::vector<double> r(basis.count());
    for (int a = 0; a < basis.count(); ++a) r[a] = (x * basis.elements[a]).trace().real();
    return r;
}

inline ComplexMatrix from_coefficients(const std::vector<double>& r, const Basis& basis) {
    if (static_cast<int>(r.size()) != basis.count())
        throw dimension_mismatch_error("from_coefficients: coefficient count mismatch");
    ComplexMatrix x(basis.dim);
    for (int a = 0; a < basis.count(); ++a) x += 0.5 * r[a] * basis.elements[a];
    return x;
}

inline ComplexMatrix random_matrix(int n, Rng& rng) {
    ComplexMatrix g(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = cplx(rng.gaussian(), rng.gaussian());
    return g;
}

inline HermitianOperator random_hermitian(int n, std::uint64_t seed) {
    if (n < 2) throw invalid_dimension_error("random_hermitian requires n >= 2");
    Rng rng(seed);
    ComplexMatrix g = random_matrix(n, rng);
    return HermitianOperator(0.5 * (g + g.adjoint()));
}

/// G G^dag / Tr(G G^dag) with complex Gaussian G: full-rank PSD by
/// construction.
inline DensityMatrix random_density(int n, std::uint64_t seed) {
    if (n < 2) throw invalid_dimension_error("random_density requires n >= 2");
    Rng rng(seed);
    ComplexMatrix g = random_matrix(n, rng);
    ComplexMatrix w = g * g.adjoint();
    const double tr = w.trace().real();
    return DensityMatrix(w * (1.0 / tr));
}

/// Haar unitary: modified Gram-Schmidt on a complex Gaussian matrix. Keeping
/// the R-diagonal of the implicit QR factorization real and positive is the
/// phase normalization that makes G -> Q well defined, and then left
/// invariance of the Gaussian ensemble makes Q Haar distributed.
inline ComplexMatrix haar_unitary(int n, std::uint64_t seed) {
    if (n < 2) throw invalid_dimension_error("haar_unitary requires n >= 2");
    Rng rng(seed);
    ComplexMatrix g = random_matrix(n, rng);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < j; ++k) {
            cplx proj{};
            for (int i = 0; i < n; ++i) proj += std::conj(g(i, k)) * g(i, j);
            for (int i = 0; i < n; ++i) g(i, j) -= proj * g(i, k);
        }
        double norm = 0.0;
        for (int i = 0; i < n; ++i) norm += std::norm(g(i, j));
        norm = std::sqrt(norm);
        for (int i = 0; i < n; ++i) g(i, j) *= 1.0 / norm;
    }
    return g;
}

inline ComplexMatrix conjugate(const ComplexMatrix& g, const ComplexMatrix& x) {
    return g * x * g.adjoint();
}

inline ComplexMatrix traceless_part(const ComplexMatrix& x) {
    ComplexMatrix y = x;
    const cplx t = x.trace() / static_cast<double>(x.dim());
    for (int i = 0; i < x.dim(); ++i) y(i, i) -= t;
    return y;
}

}  // namespace gksl
