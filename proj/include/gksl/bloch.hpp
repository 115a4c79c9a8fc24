#pragma once

#include <array>
#include <cmath>
#include <map>
#include <vector>

#include "gksl/channels.hpp"
#include "gksl/liealg.hpp"
#include "gksl/matrix.hpp"

namespace gksl {

/// Real coordinate vector of length n^2-1 for the traceless part of a state,
/// in the convention rho = I/n + (1/2) sum_a r_a lambda_a, r_a = Tr(rho l_a).
struct BlochVector {
    int dim = 0;  // Hilbert-space dimension n
    std::vector<double> r;

    BlochVector() = default;
    BlochVector(int n, std::vector<double> coords) : dim(n), r(std::move(coords)) {
        if (static_cast<int>(r.size()) != n * n - 1)
            throw dimension_mismatch_error("Bloch vector needs n^2-1 components");
    }

    double norm() const {
        double s = 0.0;
        for (double v : r) s += v * v;
        return std::sqrt(s);
    }
};

inline BlochVector to_bloch(const ComplexMatrix& rho, const Basis& basis) {
    return BlochVector(basis.dim, coefficients(rho, basis));
}

inline DensityMatrix from_bloch(const BlochVector& r, const Basis& basis) {
    if (r.dim != basis.dim) throw dimension_mismatch_error("from_bloch: dimension mismatch");
    ComplexMatrix rho = ComplexMatrix::identity(basis.dim) * (1.0 / basis.dim);
    rho += from_coefficients(r.r, basis);
    if (min_eigenvalue(rho) < -kPsdTol)
        throw state_domain_error("from_bloch: coordinates lie outside the state space");
    return DensityMatrix(rho);
}

inline std::array<double, 3> cross(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

/// Qubit Hamiltonian flow r_dot = Omega x r for H = (1/2) Omega . sigma.
inline std::array<double, 3> hamiltonian_field_su2(const std::array<double, 3>& omega,
                                                   const std::array<double, 3>& r) {
    return cross(omega, r);
}

/// Qubit Hermitian-channel contraction r_dot = -2 gamma (r - (r.l) l) for a
/// unit axis l. This is the Bloch field of the double-commutator dissipator
/// with L = l.sigma at rate gamma (equivalently L = (1/2) l.sigma at rate
/// 4 gamma); the longitudinal component r.l is preserved exactly.
inline std::array<double, 3> dissipative_field_su2(const std::array<double, 3>& ell, double gamma,
                                                   const std::array<double, 3>& r) {
    const double n2 = ell[0] * ell[0] + ell[1] * ell[1] + ell[2] * ell[2];
    if (std::abs(std::sqrt(n2) - 1.0) > 1e-10)
        throw precondition_error("dissipative_field_su2: axis must be a unit vector");
    const double rl = r[0] * ell[0] + r[1] * ell[1] + r[2] * ell[2];
    return {-2.0 * gamma * (r[0] - rl * ell[0]), -2.0 * gamma * (r[1] - rl * ell[1]),
            -2.0 * gamma * (r[2] - rl * ell[2])};
}

/// Closed form for the dephasing channel (L = sigma_z at rate gamma):
/// transverse components decay as exp(-2 gamma t), r_z is constant.
inline std::array<double, 3> analytic_dephasing(const std::array<double, 3>& r0, double gamma,
                                                double t) {
    const double decay = std::exp(-2.0 * gamma * t);
    return {r0[0] * decay, r0[1] * decay, r0[2]};
}

/// Closed form for amplitude damping (L = sigma_- at rate gamma).
inline std::array<double, 3> analytic_amplitude_damping(const std::array<double, 3>& r0,
                                                        double gamma, double t) {
    const double dt2 = std::exp(-0.5 * gamma * t);
    const double dt1 = std::exp(-gamma * t);
    return {r0[0] * dt2, r0[1] * dt2, -1.0 + (r0[2] + 1.0) * dt1};
}

/// Closed form for isotropic depolarizing decay r(t) = r0 exp(-kappa t) with
/// H = 0. kappa is passed explicitly; for the three-channel preset
/// depolarizing(gamma) the generator evaluation gives kappa = 2 gamma.
inline std::array<double, 3> analytic_depolarizing(const std::array<double, 3>& r0, double kappa,
                                                   double t) {
    const double decay = std::exp(-kappa * t);
    return {r0[0] * decay, r0[1] * decay, r0[2] * decay};
}

enum class QutritDephasingChannel { lambda3, lambda8 };

/// Per-component exponential decay rates of the linear Bloch system for the
/// diagonal qutrit dephasing channels (1-based basis indices 1..8). The rates
/// are (gamma/2) times the eigenvalues of the coefficient-space action of
/// [L,[L,.]], which is diagonal in the Gell-Mann basis for diagonal L.
inline std::map<int, double> qutrit_dephasing_rates(QutritDephasingChannel channel,
                                                    double gamma) {
    std::map<int, double> rates;
    if (channel == QutritDephasingChannel::lambda3) {
        rates[1] = 2.0 * gamma;
        rates[2] = 2.0 * gamma;
        rates[3] = 0.0;
        rates[4] = 0.5 * gamma;
        rates[5] = 0.5 * gamma;
        rates[6] = 0.5 * gamma;
        rates[7] = 0.5 * gamma;
        rates[8] = 0.0;
    } else {
        rates[1] = 0.0;
        rates[2] = 0.0;
        rates[3] = 0.0;
        rates[4] = 1.5 * gamma;
        rates[5] = 1.5 * gamma;
        rates[6] = 1.5 * gamma;
        rates[7] = 1.5 * gamma;
        rates[8] = 0.0;
    }
    return rates;
}

/// Affine representation r_dot = A r + b of the full generator in Bloch
/// coordinates, built by evaluating the matrix-side generator on the basis.
struct BlochGenerator {
    int d = 0;
    std::vector<double> A;  // d x d, row-major
    std::vector<double> b;  // drift

    double a(int i, int j) const { return A[static_cast<size_t>(i) * d + j]; }
};

inline BlochGenerator bloch_generator(const ComplexMatrix& H,
                                      const std::vector<ChannelSpec>& channels,
                                      const Basis& basis) {
    const int d = basis.count();
    BlochGenerator g;
    g.d = d;
    g.A.assign(static_cast<size_t>(d) * d, 0.0);
    g.b.assign(d, 0.0);
    const ComplexMatrix id_part =
        ComplexMatrix::identity(basis.dim) * (1.0 / basis.dim);
    const std::vector<double> drift = coefficients(gksl_generator(H, channels, id_part), basis);
    g.b = drift;
    for (int j = 0; j < d; ++j) {
        const ComplexMatrix dir = 0.5 * basis.elements[j];
        const std::vector<double> col = coefficients(gksl_generator(H, channels, dir), basis);
        for (int i = 0; i < d; ++i) g.A[static_cast<size_t>(i) * d + j] = col[i];
    }
    return g;
}

}  // namespace gksl
