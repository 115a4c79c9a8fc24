#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gksl/liealg.hpp"
#include "gksl/matrix.hpp"

namespace gksl {

/// One Lindblad channel: operator L (possibly non-Hermitian) and rate
/// gamma >= 0. The catalog stores unscaled L with the rate kept explicit;
/// gamma always multiplies the general-form dissipator, so folding
/// sqrt(gamma) into L and setting the rate to 1 is equivalent.
struct ChannelSpec {
    ComplexMatrix L;
    double gamma = 0.0;
    std::string label;

    ChannelSpec() = default;
    ChannelSpec(ComplexMatrix op, double rate, std::string name = {})
        : L(std::move(op)), gamma(rate), label(std::move(name)) {
        if (!(gamma >= 0.0)) throw precondition_error("channel rate must be >= 0");
        if (!L.all_finite()) throw precondition_error("channel operator has non-finite entries");
    }
};

/// Hermitian-channel dissipator -(gamma/2) [L,[L,rho]].
inline ComplexMatrix dissipator_hermitian(const ComplexMatrix& L, double gamma,
                                          const ComplexMatrix& rho) {
    if (!L.is_hermitian(kHermTol)) throw precondition_error("dissipator_hermitian: L not Hermitian");
    if (!(gamma >= 0.0)) throw precondition_error("dissipator_hermitian: gamma must be >= 0");
    return (-0.5 * gamma) * commutator(L, commutator(L, rho));
}

/// General (Kraus-style) dissipator L rho L^dag - (1/2){L^dag L, rho}.
inline ComplexMatrix dissipator_general(const ComplexMatrix& L, const ComplexMatrix& rho) {
    L.check_same_dim(rho);
    const ComplexMatrix Ld = L.adjoint();
    return L * rho * Ld - 0.5 * anticommutator(Ld * L, rho);
}

/// Cartesian split L = A + iB with A, B Hermitian.
inline std::pair<ComplexMatrix, ComplexMatrix> cartesian_decompose(const ComplexMatrix& L) {
    if (!L.all_finite()) throw precondition_error("cartesian_decompose: non-finite entries");
    const ComplexMatrix Ld = L.adjoint();
    return {0.5 * (L + Ld), cplx(0.0, -0.5) * (L - Ld)};
}

/// Four-term form of the general dissipator in the Hermitian parts A, B of L:
///   D(rho) = -1/2 [A,[A,rho]] - 1/2 [B,[B,rho]]
///            - i/2 [A,{B,rho}] + i/2 [B,{A,rho}].
/// Equals dissipator_general(L, rho) identically. (The two mixed terms do not
/// collapse to a single commutator -i[AB+BA, rho]; the expansion gives
/// i(B rho A - A rho B) - (i/2){[A,B], rho}, which has no such form in
/// general, so only the four-term identity is exposed and tested.)
inline ComplexMatrix dissipator_decomposed(const ComplexMatrix& L, const ComplexMatrix& rho) {
    auto [A, B] = cartesian_decompose(L);
    ComplexMatrix out = (-0.5) * commutator(A, commutator(A, rho));
    out += (-0.5) * commutator(B, commutator(B, rho));
    out += cplx(0.0, -0.5) * commutator(A, anticommutator(B, rho));
    out += cplx(0.0, 0.5) * commutator(B, anticommutator(A, rho));
    return out;
}

/// Full GKSL generator -i[H,rho] + sum_j gamma_j (L_j rho L_j^dag
/// - 1/2 {L_j^dag L_j, rho}).
inline ComplexMatrix gksl_generator(const ComplexMatrix& H,
                                    const std::vector<ChannelSpec>& channels,
                                    const ComplexMatrix& rho) {
    H.check_same_dim(rho);
    ComplexMatrix out = cplx(0.0, -1.0) * commutator(H, rho);
    for (const auto& ch : channels) {
        ch.L.check_same_dim(rho);
        if (!(ch.gamma >= 0.0)) throw precondition_error("gksl_generator: negative channel rate");
        if (ch.gamma == 0.0) continue;
        out += ch.gamma * dissipator_general(ch.L, rho);
    }
    return out;
}

namespace pauli {
inline ComplexMatrix x() {
    ComplexMatrix m(2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}
inline ComplexMatrix y() {
    ComplexMatrix m(2);
    m(0, 1) = cplx(0.0, -1.0);
    m(1, 0) = cplx(0.0, 1.0);
    return m;
}
inline ComplexMatrix z() {
    ComplexMatrix m(2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}
inline ComplexMatrix minus() {  // sigma_- = [[0,0],[1,0]]
    ComplexMatrix m(2);
    m(1, 0) = 1.0;
    return m;
}
}  // namespace pauli

struct ChannelCatalogEntry {
    std::string name;
    int dim = 0;
    std::vector<ChannelSpec> channels;
    std::string convention;  // how gamma enters and what the Bloch effect is
};

/// Preset channels. Rates are stored unscaled; `gamma` multiplies the general
/// dissipator, so e.g. dephasing(gamma) acts like L = sqrt(gamma) sigma_z.
inline ChannelCatalogEntry make_channel(const std::string& name, double gamma) {
    auto gm3 = [] { return standard_basis(3); };
    if (name == "dephasing") {
        return {name,
                2,
                {ChannelSpec(pauli::z(), gamma, "sigma_z")},
                "L = sigma_z, rate gamma; transverse Bloch decay at rate 2*gamma, r_z constant"};
    }
    if (name == "depolarizing") {
        return {name,
                2,
                {ChannelSpec(pauli::x(), 0.5 * gamma, "sigma_x"),
                 ChannelSpec(pauli::y(), 0.5 * gamma, "sigma_y"),
                 ChannelSpec(pauli::z(), 0.5 * gamma, "sigma_z")},
                "L_i = sigma_i, rate gamma/2 each; isotropic Bloch decay at rate kappa = 2*gamma "
                "(rate taken from the direct generator evaluation)"};
    }
    if (name == "amplitude_damping") {
        return {name,
                2,
                {ChannelSpec(pauli::minus(), gamma, "sigma_-")},
                "L = sigma_- = [[0,0],[1,0]], rate gamma; transverse decay at gamma/2, "
                "r_z -> -1 at rate gamma"};
    }
    if (name == "qutrit_dephasing_l3") {
        return {name,
                3,
                {ChannelSpec(gm3().elements[2], gamma, "lambda_3")},
                "L = lambda_3 = diag(1,-1,0), rate gamma; coherence decay rates 2*gamma on "
                "(r1,r2), gamma/2 on (r4..r7), populations constant"};
    }
    if (name == "qutrit_dephasing_l8") {
        return {name,
                3,
                {ChannelSpec(gm3().elements[7], gamma, "lambda_8")},
                "L = lambda_8 = diag(1,1,-2)/sqrt(3), rate gamma; decay 3*gamma/2 on (r4..r7), "
                "(r1,r2) and populations constant"};
    }
    if (name == "qutrit_ladder_l1") {
        return {name,
                3,
                {ChannelSpec(gm3().elements[0], gamma, "lambda_1")},
                "L = lambda_1 (exchange of levels 1,2), rate gamma; relaxes toward states "
                "invariant under the 1<->2 swap"};
    }
    throw precondition_error("unknown channel preset: " + name);
}

inline std::vector<std::string> channel_catalog_names() {
    return {"dephasing",          "depolarizing",       "amplitude_damping",
            "qutrit_dephasing_l3", "qutrit_dephasing_l8", "qutrit_ladder_l1"};
}

}  // namespace gksl
