#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

#include "gksl/liealg.hpp"
#include "gksl/matrix.hpp"
#include "gksl/rng.hpp"

namespace gksl {

/// Minimal dense real matrix, just enough for the coefficient-space
/// verification algebra (d <= 15 here).
struct RealMatrix {
    int rows = 0, cols = 0;
    std::vector<double> a;

    RealMatrix() = default;
    RealMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}

    static RealMatrix identity(int n) {
        RealMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    double& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    RealMatrix transposed() const {
        RealMatrix t(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    double frobenius() const {
        double s = 0.0;
        for (double v : a) s += v * v;
        return std::sqrt(s);
    }

    friend RealMatrix operator*(const RealMatrix& x, const RealMatrix& y) {
        if (x.cols != y.rows) throw dimension_mismatch_error("real matrix product shape");
        RealMatrix z(x.rows, y.cols);
        for (int i = 0; i < x.rows; ++i)
            for (int k = 0; k < x.cols; ++k) {
                const double v = x(i, k);
                if (v == 0.0) continue;
                for (int j = 0; j < y.cols; ++j) z(i, j) += v * y(k, j);
            }
        return z;
    }
    friend RealMatrix operator+(RealMatrix x, const RealMatrix& y) {
        for (size_t k = 0; k < x.a.size(); ++k) x.a[k] += y.a[k];
        return x;
    }
    friend RealMatrix operator-(RealMatrix x, const RealMatrix& y) {
        for (size_t k = 0; k < x.a.size(); ++k) x.a[k] -= y.a[k];
        return x;
    }
    friend RealMatrix operator*(RealMatrix x, double s) {
        for (double& v : x.a) v *= s;
        return x;
    }
};

/// Gaussian elimination with partial pivoting; B holds one RHS per column.
inline RealMatrix solve_linear(RealMatrix A, RealMatrix B) {
    const int n = A.rows;
    if (A.cols != n || B.rows != n) throw dimension_mismatch_error("solve_linear shape");
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(A(r, col)) > std::abs(A(piv, col))) piv = r;
        if (std::abs(A(piv, col)) < 1e-300) throw precondition_error("solve_linear: singular system");
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(A(col, j), A(piv, j));
            for (int j = 0; j < B.cols; ++j) std::swap(B(col, j), B(piv, j));
        }
        const double inv = 1.0 / A(col, col);
        for (int r = col + 1; r < n; ++r) {
            const double f = A(r, col) * inv;
            if (f == 0.0) continue;
            for (int j = col; j < n; ++j) A(r, j) -= f * A(col, j);
            for (int j = 0; j < B.cols; ++j) B(r, j) -= f * B(col, j);
        }
    }
    for (int col = n - 1; col >= 0; --col) {
        const double inv = 1.0 / A(col, col);
        for (int j = 0; j < B.cols; ++j) {
            double s = B(col, j);
            for (int k = col + 1; k < n; ++k) s -= A(col, k) * B(k, j);
            B(col, j) = s * inv;
        }
    }
    return B;
}

inline std::vector<double> symmetric_eigenvalues(const RealMatrix& m) {
    ComplexMatrix c(m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) c(i, j) = 0.5 * (m(i, j) + m(j, i));
    return eigh(c).values;
}

/// Rank-3 coefficient tensor of a bilinear map on the traceless sector:
/// out_c = sum_{a,b} c_abc X_a Y_b with X_a = Tr(X lambda_a).
struct BilinearMapTensor {
    int n = 0;  // Hilbert-space dimension
    int d = 0;  // n^2 - 1
    std::vector<double> c;

    BilinearMapTensor() = default;
    explicit BilinearMapTensor(int dim_n)
        : n(dim_n), d(dim_n * dim_n - 1), c(static_cast<size_t>(d) * d * d, 0.0) {}

    double& at(int a, int b, int cc) { return c[(static_cast<size_t>(a) * d + b) * d + cc]; }
    double at(int a, int b, int cc) const { return c[(static_cast<size_t>(a) * d + b) * d + cc]; }

    std::vector<double> apply(const std::vector<double>& x, const std::vector<double>& y) const {
        std::vector<double> out(d, 0.0);
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) {
                const double xy = x[a] * y[b];
                if (xy == 0.0) continue;
                for (int cc = 0; cc < d; ++cc) out[cc] += at(a, b, cc) * xy;
            }
        return out;
    }

    double frobenius() const {
        double s = 0.0;
        for (double v : c) s += v * v;
        return std::sqrt(s);
    }

    BilinearMapTensor& operator+=(const BilinearMapTensor& o) {
        for (size_t k = 0; k < c.size(); ++k) c[k] += o.c[k];
        return *this;
    }
    BilinearMapTensor& operator*=(double s) {
        for (double& v : c) v *= s;
        return *this;
    }
    friend BilinearMapTensor operator-(BilinearMapTensor x, const BilinearMapTensor& y) {
        for (size_t k = 0; k < x.c.size(); ++k) x.c[k] -= y.c[k];
        return x;
    }
};

/// The bracket tensor: c_abc = f_abc. The unique (up to scale) equivariant
/// bilinear tensor for n = 2, and the torsion seed in every dimension.
inline BilinearMapTensor bracket_tensor(const Basis& basis) {
    const StructureConstants f = structure_constants(basis);
    BilinearMapTensor t(basis.dim);
    for (int a = 0; a < t.d; ++a)
        for (int b = 0; b < t.d; ++b)
            for (int cc = 0; cc < t.d; ++cc) t.at(a, b, cc) = f(a, b, cc);
    return t;
}

/// Coefficient tensor of a matrix-level bilinear map (inputs are fed as
/// (1/2) lambda_a, whose coefficient vectors are the unit vectors).
inline BilinearMapTensor tensor_of_bilinear(
    const std::function<ComplexMatrix(const ComplexMatrix&, const ComplexMatrix&)>& xi,
    const Basis& basis) {
    BilinearMapTensor t(basis.dim);
    for (int a = 0; a < t.d; ++a)
        for (int b = 0; b < t.d; ++b) {
            const ComplexMatrix out =
                xi(0.5 * basis.elements[a], 0.5 * basis.elements[b]);
            const std::vector<double> oc = coefficients(out, basis);
            for (int cc = 0; cc < t.d; ++cc) t.at(a, b, cc) = oc[cc];
        }
    return t;
}

/// Coefficient-space rotation of Ad_g: R_ab = (1/2) Tr(lambda_a g lambda_b
/// g^dag), orthogonal.
inline RealMatrix adjoint_rotation(const ComplexMatrix& g, const Basis& basis) {
    const int d = basis.count();
    RealMatrix r(d, d);
    const ComplexMatrix gd = g.adjoint();
    for (int b = 0; b < d; ++b) {
        const ComplexMatrix gb = g * basis.elements[b] * gd;
        for (int a = 0; a < d; ++a) r(a, b) = 0.5 * hs_inner(basis.elements[a], gb).real();
    }
    return r;
}

/// Transport of the tensor by a coefficient rotation (diagonal action on all
/// three slots): c'_abc = sum R_{a'a} R_{b'b} R_{c'c} c_{a'b'c'}.
inline BilinearMapTensor transport_tensor(const BilinearMapTensor& t, const RealMatrix& r) {
    const int d = t.d;
    BilinearMapTensor s1(t.n), s2(t.n), out(t.n);
    for (int a = 0; a < d; ++a)  // first slot
        for (int b = 0; b < d; ++b)
            for (int cc = 0; cc < d; ++cc) {
                double acc = 0.0;
                for (int ap = 0; ap < d; ++ap) acc += r(ap, a) * t.at(ap, b, cc);
                s1.at(a, b, cc) = acc;
            }
    for (int a = 0; a < d; ++a)  // second slot
        for (int b = 0; b < d; ++b)
            for (int cc = 0; cc < d; ++cc) {
                double acc = 0.0;
                for (int bp = 0; bp < d; ++bp) acc += r(bp, b) * s1.at(a, bp, cc);
                s2.at(a, b, cc) = acc;
            }
    for (int a = 0; a < d; ++a)  // third slot
        for (int b = 0; b < d; ++b)
            for (int cc = 0; cc < d; ++cc) {
                double acc = 0.0;
                for (int cp = 0; cp < d; ++cp) acc += r(cp, cc) * s2.at(a, b, cp);
                out.at(a, b, cc) = acc;
            }
    return out;
}

/// Monte-Carlo Haar twirl: averages simultaneously conjugated copies over
/// Haar samples and projects onto the equivariant subspace as the sample
/// count grows. Per-sample seeds are seed + sample index.
///
/// The sample budget is split into two averaging passes. Because transports
/// compose as the group does, the composition of the two pass averages is
/// itself an average of conjugated copies over products of Haar samples, and
/// the second pass re-suppresses the non-equivariant remainder left by the
/// first, so the defect falls off much faster than the single-pass
/// 1/sqrt(N) while the estimator stays unbiased.
inline BilinearMapTensor twirl(const BilinearMapTensor& t, int n, long samples,
                               std::uint64_t seed) {
    if (samples < 1) throw precondition_error("twirl: samples must be >= 1");
    const Basis basis = standard_basis(n);
    const long first = samples / 2 > 0 ? samples / 2 : 1;
    const long second = samples - first;

    BilinearMapTensor acc(n);
    long drawn = 0;
    for (long s = 0; s < first; ++s) {
        const ComplexMatrix g = haar_unitary(n, seed + static_cast<std::uint64_t>(drawn++));
        acc += transport_tensor(t, adjoint_rotation(g, basis));
    }
    acc *= 1.0 / static_cast<double>(first);
    if (second == 0) return acc;

    BilinearMapTensor out(n);
    for (long s = 0; s < second; ++s) {
        const ComplexMatrix g = haar_unitary(n, seed + static_cast<std::uint64_t>(drawn++));
        out += transport_tensor(acc, adjoint_rotation(g, basis));
    }
    out *= 1.0 / static_cast<double>(second);
    return out;
}

/// Max transport error over fresh Haar probes; zero exactly on the
/// equivariant subspace.
inline double equivariance_defect(const BilinearMapTensor& t, int probes, std::uint64_t seed) {
    const Basis basis = standard_basis(t.n);
    double worst = 0.0;
    for (int p = 0; p < probes; ++p) {
        const ComplexMatrix g = haar_unitary(t.n, seed + 0x9E37ULL + static_cast<std::uint64_t>(p));
        worst = std::max(worst, (transport_tensor(t, adjoint_rotation(g, basis)) - t).frobenius());
    }
    return worst;
}

/// Least-squares fit of t against the line spanned by ref; returns the
/// scalar and the absolute off-line residual (Frobenius).
inline std::pair<double, double> project_to_line(const BilinearMapTensor& t,
                                                 const BilinearMapTensor& ref) {
    double dot = 0.0, nrm2 = 0.0;
    for (size_t k = 0; k < t.c.size(); ++k) {
        dot += t.c[k] * ref.c[k];
        nrm2 += ref.c[k] * ref.c[k];
    }
    const double scalar = dot / nrm2;
    BilinearMapTensor diff = t;
    for (size_t k = 0; k < diff.c.size(); ++k) diff.c[k] -= scalar * ref.c[k];
    return {scalar, diff.frobenius()};
}

/// Coefficient-space matrix of X -> -i[L, X] (real, antisymmetric). Its image
/// is the coherence sector of L; (ad_L)^2 = -A^2 as a positive map.
inline RealMatrix ad_matrix(const ComplexMatrix& L, const Basis& basis) {
    const int d = basis.count();
    RealMatrix a(d, d);
    for (int b = 0; b < d; ++b) {
        const ComplexMatrix col = cplx(0.0, -1.0) * commutator(L, 0.5 * basis.elements[b]);
        const std::vector<double> coef = coefficients(col, basis);
        for (int i = 0; i < d; ++i) a(i, b) = coef[i];
    }
    return a;
}

inline RealMatrix ad_squared_matrix(const ComplexMatrix& L, const Basis& basis) {
    const RealMatrix a = ad_matrix(L, basis);
    return (a * a) * (-1.0);
}

/// Eigenvalues (ascending) of the coefficient-space action of [L,[L,.]]; the
/// Bloch decay rates of the channel are (gamma/2) times these.
inline std::vector<double> ad_squared_spectrum(const ComplexMatrix& L, const Basis& basis) {
    return symmetric_eigenvalues(ad_squared_matrix(L, basis));
}

struct FactorizationResult {
    RealMatrix T;
    double residual = 0.0;  // relative: ||Xi - ad_L T||_F / ||Xi||_F
};

/// Least-squares factorization Xi_L = [L, T(.)] through the commutator with
/// L, solved columnwise via ridge-regularized normal equations
/// (A^T A + eps I) T = A^T Xi with eps = 1e-12 relative. Two iterated-Tikhonov
/// refinement passes remove the ridge bias from the reported residual while
/// keeping the regularized solve well conditioned.
inline FactorizationResult factorization_residual(const RealMatrix& xi_l, const ComplexMatrix& L,
                                                  const Basis& basis) {
    const RealMatrix a = ad_matrix(L, basis);
    if (a.frobenius() < 1e-12)
        throw precondition_error("factorization: ad_L vanishes (L proportional to identity)");
    const int d = a.rows;
    RealMatrix ata = a.transposed() * a;
    double diag_scale = 0.0;
    for (int i = 0; i < d; ++i) diag_scale = std::max(diag_scale, ata(i, i));
    for (int i = 0; i < d; ++i) ata(i, i) += 1e-12 * diag_scale;

    FactorizationResult out;
    out.T = solve_linear(ata, a.transposed() * xi_l);
    for (int refine = 0; refine < 2; ++refine)
        out.T = out.T + solve_linear(ata, a.transposed() * (xi_l - a * out.T));

    const double num = (xi_l - a * out.T).frobenius();
    const double den = xi_l.frobenius();
    out.residual = den > 0.0 ? num / den : 0.0;
    return out;
}

struct UniquenessBlock {
    int level_i = 0, level_j = 0;     // eigenvalue pair of L spanning the block
    double adsq_eigenvalue = 0.0;     // (mu_i - mu_j)^2
    std::vector<double> scalars;      // fitted multiple of (ad_L)^2, one per candidate
    double max_residual = 0.0;        // worst relative off-line residual
};

struct UniquenessReport {
    int n = 0;
    int candidates = 0;
    std::vector<UniquenessBlock> blocks;
    double max_residual = 0.0;
};

/// Isotropy-twirled dissipator candidates against the double-commutator line.
///
/// Candidates are built as Xi = ad_L K ad_L from random HS-symmetric K (the
/// metric part of a torsion-generated map), then averaged over the maximal
/// torus of the isotropy group of L: g(theta) = U diag(e^{i theta_k}) U^dag.
/// The torus average is an equispaced phase grid, which integrates the
/// (trigonometric degree <= 2 per angle) integrand exactly, so the projection
/// carries no Monte-Carlo noise. On each coherence block (i,j) of L the
/// twirled candidate must be a scalar multiple of (ad_L)^2; the scalars may
/// differ between blocks, which the report lists per block.
inline UniquenessReport uniqueness_check(int n, const ComplexMatrix& L, int candidates,
                                         std::uint64_t seed) {
    if (!L.is_hermitian(kHermTol)) throw precondition_error("uniqueness_check: L not Hermitian");
    const Basis basis = standard_basis(n);
    const int d = basis.count();
    const RealMatrix a = ad_matrix(L, basis);
    if (a.frobenius() < 1e-12)
        throw precondition_error("uniqueness_check: ad_L vanishes (L proportional to identity)");
    const RealMatrix adsq = ad_squared_matrix(L, basis);
    const EigenSystem es = eigh(L);

    // torus elements and their coefficient rotations, on an exact grid
    const int grid = 8;
    std::vector<RealMatrix> rots;
    std::vector<int> idx(n, 0);
    while (true) {
        ComplexMatrix phases(n);
        for (int k = 0; k < n; ++k) {
            const double th = 2.0 * std::numbers::pi * idx[k] / grid;
            phases(k, k) = cplx(std::cos(th), std::sin(th));
        }
        rots.push_back(adjoint_rotation(es.vectors * phases * es.vectors.adjoint(), basis));
        int pos = n - 1;
        while (pos >= 0 && ++idx[pos] == grid) idx[pos--] = 0;
        if (pos < 0) break;
    }

    // orthonormal coefficient-space frames for each coherence block (i,j)
    struct Block {
        int i, j;
        double eig;
        std::vector<double> u1, u2;  // unit vectors in coefficient space
    };
    auto coeff_unit = [&](const ComplexMatrix& x) {
        std::vector<double> v = coefficients(x, basis);
        double s = 0.0;
        for (double w : v) s += w * w;
        s = std::sqrt(s);
        for (double& w : v) w /= s;
        return v;
    };
    std::vector<Block> blocks;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double gap = es.values[j] - es.values[i];
            if (std::abs(gap) <= kHermTol * 10) continue;  // degenerate pair: commutant sector
            // Hermitian frame of the (i,j) coherence plane:
            //   u_i u_j^dag + u_j u_i^dag  and  -i (u_i u_j^dag - u_j u_i^dag)
            ComplexMatrix sym(n), anti(n);
            for (int r = 0; r < n; ++r)
                for (int s = 0; s < n; ++s) {
                    const cplx t1 = es.vectors(r, i) * std::conj(es.vectors(s, j));
                    const cplx t2 = es.vectors(r, j) * std::conj(es.vectors(s, i));
                    sym(r, s) = t1 + t2;
                    anti(r, s) = cplx(0.0, -1.0) * (t1 - t2);
                }
            blocks.push_back({i, j, gap * gap, coeff_unit(sym), coeff_unit(anti)});
        }

    auto restrict2 = [&](const RealMatrix& m, const Block& blk) {
        // 2x2 restriction of m onto span{u1, u2}
        std::array<std::array<double, 2>, 2> out{};
        const std::vector<double>* us[2] = {&blk.u1, &blk.u2};
        for (int r = 0; r < 2; ++r)
            for (int cidx = 0; cidx < 2; ++cidx) {
                double s = 0.0;
                for (int ii = 0; ii < d; ++ii)
                    for (int jj = 0; jj < d; ++jj)
                        s += (*us[r])[ii] * m(ii, jj) * (*us[cidx])[jj];
                out[r][cidx] = s;
            }
        return out;
    };

    UniquenessReport report;
    report.n = n;
    report.candidates = candidates;
    for (const auto& blk : blocks)
        report.blocks.push_back({blk.i, blk.j, blk.eig, {}, 0.0});

    Rng rng(seed);
    for (int cand = 0; cand < candidates; ++cand) {
        RealMatrix k(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j <= i; ++j) {
                const double v = rng.gaussian();
                k(i, j) = v;
                k(j, i) = v;  // HS-symmetric candidate kernels
            }
        RealMatrix kbar(d, d);
        for (const auto& r : rots) kbar = kbar + r.transposed() * k * r;
        kbar = kbar * (1.0 / static_cast<double>(rots.size()));
        const RealMatrix xi = a * kbar * a;

        for (size_t bi = 0; bi < blocks.size(); ++bi) {
            const auto xb = restrict2(xi, blocks[bi]);
            const auto db = restrict2(adsq, blocks[bi]);
            double dot = 0.0, ref2 = 0.0, x2 = 0.0;
            for (int r = 0; r < 2; ++r)
                for (int c2 = 0; c2 < 2; ++c2) {
                    dot += xb[r][c2] * db[r][c2];
                    ref2 += db[r][c2] * db[r][c2];
                    x2 += xb[r][c2] * xb[r][c2];
                }
            const double scalar = dot / ref2;
            double off2 = 0.0;
            for (int r = 0; r < 2; ++r)
                for (int c2 = 0; c2 < 2; ++c2) {
                    const double diff = xb[r][c2] - scalar * db[r][c2];
                    off2 += diff * diff;
                }
            const double rel = std::sqrt(off2) / std::max(std::sqrt(x2), 1e-30);
            report.blocks[bi].scalars.push_back(scalar);
            report.blocks[bi].max_residual = std::max(report.blocks[bi].max_residual, rel);
            report.max_residual = std::max(report.max_residual, rel);
        }
    }
    return report;
}

struct CurvatureReport {
    double max_ratio = 0.0;
    long trials = 0;
    long violations = 0;  // ratios above 1 + 1e-12
};

/// Samples the bound ||[L,[L,rho]]|| <= 2 ||L||^2 ||rho|| (Hilbert-Schmidt)
/// over random traceless Hermitian pairs.
inline CurvatureReport curvature_bound_check(int n, long trials, std::uint64_t seed) {
    CurvatureReport rep;
    rep.trials = trials;
    Rng rng(seed);
    for (long t = 0; t < trials; ++t) {
        ComplexMatrix g1 = random_matrix(n, rng);
        ComplexMatrix g2 = random_matrix(n, rng);
        const ComplexMatrix L = traceless_part(0.5 * (g1 + g1.adjoint()));
        const ComplexMatrix rho = traceless_part(0.5 * (g2 + g2.adjoint()));
        const double nl = hs_norm(L), nr = hs_norm(rho);
        if (nl < 1e-12 || nr < 1e-12) continue;
        const double ratio = hs_norm(commutator(L, commutator(L, rho))) / (2.0 * nl * nl * nr);
        rep.max_ratio = std::max(rep.max_ratio, ratio);
        if (ratio > 1.0 + 1e-12) ++rep.violations;
    }
    return rep;
}

/// exp(G t) by scaling-and-squaring on a truncated Taylor series; the
/// independent propagator oracle for the fixed-step integrator.
inline ComplexMatrix matrix_exponential_oracle(const ComplexMatrix& g, double t) {
    const int n = g.dim();
    ComplexMatrix a = g * t;
    int squarings = 0;
    while (a.hs_norm() > 0.5) {
        a *= 0.5;
        ++squarings;
        if (squarings > 60) throw precondition_error("matrix exponential: norm too large");
    }
    ComplexMatrix result = ComplexMatrix::identity(n);
    ComplexMatrix term = ComplexMatrix::identity(n);
    for (int k = 1; k <= 30; ++k) {
        term = term * a;
        term *= 1.0 / static_cast<double>(k);
        result += term;
        if (term.hs_norm() < 1e-20) break;
    }
    for (int s = 0; s < squarings; ++s) result = result * result;
    return result;
}

inline ComplexMatrix to_complex(const RealMatrix& m) {
    ComplexMatrix c(m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) c(i, j) = m(i, j);
    return c;
}

/// Decay exponent of v(t) ~ v0 exp(-rate t) by linear least squares on
/// log |v|; all samples must be nonzero.
inline double fit_exponential_rate(const std::vector<double>& times,
                                   const std::vector<double>& values) {
    if (times.size() != values.size() || times.size() < 2)
        throw precondition_error("fit_exponential_rate: need matching samples");
    double st = 0.0, sl = 0.0, stt = 0.0, stl = 0.0;
    const double m = static_cast<double>(times.size());
    for (size_t k = 0; k < times.size(); ++k) {
        const double lv = std::log(std::abs(values[k]));
        if (!std::isfinite(lv)) throw precondition_error("fit_exponential_rate: zero sample");
        st += times[k];
        sl += lv;
        stt += times[k] * times[k];
        stl += times[k] * lv;
    }
    const double slope = (m * stl - st * sl) / (m * stt - st * st);
    return -slope;
}

}  // namespace gksl
