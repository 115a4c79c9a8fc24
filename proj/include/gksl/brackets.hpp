#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "gksl/channels.hpp"
#include "gksl/liealg.hpp"
#include "gksl/matrix.hpp"

namespace gksl {

inline constexpr double kClusterTol = 1e-8;  // eigenvalue clustering for commutant projections

// Functional gradients dF/drho of real-valued functionals are Hermitian
// under the HS pairing; the brackets require that of their inputs.
inline void check_gradient(const ComplexMatrix& grad, const char* who) {
    if (!grad.is_hermitian(kHermTol))
        throw precondition_error(std::string(who) + ": functional gradient not Hermitian");
}

/// Lie-Poisson bracket on density operators,
///   {F, H}(rho) = < rho, -i [dF/drho, dH/drho] >_HS,
/// real-valued for Hermitian gradients. The -i realizes the su(n)
/// identification (generators are stored Hermitian), so that with the energy
/// functional H(rho) = Tr(H rho) the induced flow is rho_dot = -i[H, rho].
inline double lie_poisson(const ComplexMatrix& grad_f, const ComplexMatrix& grad_h,
                          const ComplexMatrix& rho) {
    check_gradient(grad_f, "lie_poisson");
    check_gradient(grad_h, "lie_poisson");
    const ComplexMatrix c = cplx(0.0, -1.0) * commutator(grad_f, grad_h);
    return hs_inner(rho, c).real();
}

/// ACSP metric bracket (F,S) = -(gamma/2) < [L, dF/drho], [L, dS/drho] >_HS.
/// Symmetric, negative semidefinite, kernel = commutant of L.
inline double acsp_metric(const ComplexMatrix& grad_f, const ComplexMatrix& grad_s,
                          const ComplexMatrix& L, double gamma) {
    if (!L.is_hermitian(kHermTol)) throw precondition_error("acsp_metric: L not Hermitian");
    check_gradient(grad_f, "acsp_metric");
    check_gradient(grad_s, "acsp_metric");
    return -0.5 * gamma * hs_inner(commutator(L, grad_f), commutator(L, grad_s)).real();
}

/// Double-commutator form of the same bracket,
/// -(gamma/2) < dF/drho, [L,[L, dS/drho]] >_HS.
inline double acsp_metric_double_comm(const ComplexMatrix& grad_f, const ComplexMatrix& grad_s,
                                      const ComplexMatrix& L, double gamma) {
    return -0.5 * gamma * hs_inner(grad_f, commutator(L, commutator(L, grad_s))).real();
}

/// Vector field induced by the Lie-Poisson bracket with energy Tr(H rho).
inline ComplexMatrix lie_poisson_field(const ComplexMatrix& H, const ComplexMatrix& rho) {
    return cplx(0.0, -1.0) * commutator(H, rho);
}

/// Vector field induced by the metric bracket with the quadratic potential
/// S(rho) = (1/2) Tr(rho^2), whose gradient is rho itself.
inline ComplexMatrix metric_field(const ComplexMatrix& L, double gamma,
                                  const ComplexMatrix& rho) {
    return (-0.5 * gamma) * commutator(L, commutator(L, rho));
}

/// Metriplectic vector field: Lie-Poisson part plus metric part,
/// rho_dot = -i[H,rho] - (gamma/2)[L,[L,rho]].
inline ComplexMatrix metriplectic_field(const ComplexMatrix& rho, const ComplexMatrix& H,
                                        const ComplexMatrix& L, double gamma) {
    if (!L.is_hermitian(kHermTol)) throw precondition_error("metriplectic_field: L not Hermitian");
    return lie_poisson_field(H, rho) + metric_field(L, gamma, rho);
}

/// Split A into its component commuting with L (block pinch inside the
/// eigenvalue clusters of L, gap tolerance 1e-8) and the HS-orthogonal rest.
inline std::pair<ComplexMatrix, ComplexMatrix> commutant_projection(const ComplexMatrix& L,
                                                                    const ComplexMatrix& A) {
    if (!L.is_hermitian(kHermTol))
        throw precondition_error("commutant_projection: L not Hermitian");
    L.check_same_dim(A);
    const EigenSystem es = eigh(L);
    const int n = L.dim();
    // cluster ids over the sorted eigenvalues
    std::vector<int> cluster(n, 0);
    for (int i = 1; i < n; ++i)
        cluster[i] = (es.values[i] - es.values[i - 1] > kClusterTol) ? cluster[i - 1] + 1
                                                                     : cluster[i - 1];
    const ComplexMatrix& u = es.vectors;
    const ComplexMatrix au = u.adjoint() * A * u;
    ComplexMatrix pinched(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (cluster[i] == cluster[j]) pinched(i, j) = au(i, j);
    const ComplexMatrix a_par = u * pinched * u.adjoint();
    return {a_par, A - a_par};
}

/// Both sides of the transverse contraction identity
/// d/dt ||rho_perp||^2 = -gamma ||[L, rho_perp]||^2 at the given state.
inline std::pair<double, double> contraction_rate(const ComplexMatrix& rho,
                                                  const ComplexMatrix& L, double gamma) {
    auto [rho_par, rho_perp] = commutant_projection(L, rho);
    const ComplexMatrix drho = (-0.5 * gamma) * commutator(L, commutator(L, rho_perp));
    const double lhs = 2.0 * hs_inner(rho_perp, drho).real();
    const double c = hs_norm(commutator(L, rho_perp));
    return {lhs, -gamma * c * c};
}

/// Classical double-bracket field M_dot = [M, gradH] - lambda [M,[M, gradC]].
/// Isospectral: both terms are tangent to the adjoint orbit of M.
inline ComplexMatrix bkmr_field(const ComplexMatrix& M, const ComplexMatrix& grad_h,
                                const ComplexMatrix& grad_c, double lambda) {
    return commutator(M, grad_h) - lambda * commutator(M, commutator(M, grad_c));
}

/// Read-only diagnostic: -Tr(rho ln rho) over the spectral decomposition.
/// Only the quadratic potential S = (1/2) Tr(rho^2) drives the metric
/// bracket; the entropy never enters any generator here.
inline double von_neumann_entropy(const ComplexMatrix& rho) {
    double s = 0.0;
    for (double p : eigh(rho).values) {
        if (p < -kPsdTol) throw state_domain_error("von_neumann_entropy: negative eigenvalue");
        if (p > 1e-15) s -= p * std::log(p);
    }
    return s;
}

}  // namespace gksl
