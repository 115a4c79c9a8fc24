#pragma once

#include <vector>

#include "gksl/channels.hpp"
#include "gksl/liealg.hpp"
#include "gksl/matrix.hpp"

namespace gksl {

/// Element of V = g^{+m}: an m-tuple of same-dimension operators.
struct AdjointTuple {
    std::vector<ComplexMatrix> components;

    AdjointTuple() = default;
    explicit AdjointTuple(std::vector<ComplexMatrix> c) : components(std::move(c)) {
        if (components.empty()) throw precondition_error("adjoint tuple needs m >= 1 components");
        for (const auto& v : components) components.front().check_same_dim(v);
    }

    int size() const { return static_cast<int>(components.size()); }
    int dim() const { return components.empty() ? 0 : components.front().dim(); }
};

/// Hamiltonian plus Hermitian Lindblad operators with rates: the data of the
/// reduced system on SU(n) x g^{+m}. Generators are stored as Hermitian
/// matrices; the su(n) element is -iH, with the -i applied where it is used.
struct ACSPSystem {
    HermitianOperator H;
    std::vector<HermitianOperator> lindblads;
    std::vector<double> rates;

    ACSPSystem(HermitianOperator h, std::vector<HermitianOperator> ls, std::vector<double> gs)
        : H(std::move(h)), lindblads(std::move(ls)), rates(std::move(gs)) {
        if (lindblads.size() != rates.size())
            throw precondition_error("ACSP system: one rate per Lindblad operator");
        for (const auto& l : lindblads) H.matrix().check_same_dim(l.matrix());
        for (double g : rates)
            if (!(g >= 0.0)) throw precondition_error("ACSP system: rates must be >= 0");
    }

    int dim() const { return H.dim(); }
    int m() const { return static_cast<int>(lindblads.size()); }
};

/// Adjoint torsion K(xi, v) = xi.v - v.xi = 2[xi, v] in each component: the
/// skew difference of the left and right adjoint actions on V.
inline AdjointTuple torsion(const ComplexMatrix& xi, const AdjointTuple& v) {
    std::vector<ComplexMatrix> out;
    out.reserve(v.components.size());
    for (const auto& vk : v.components) {
        xi.check_same_dim(vk);
        out.push_back(2.0 * commutator(xi, vk));
    }
    return AdjointTuple(std::move(out));
}

/// Diamond operator v <> alpha = sum_k [v_k, alpha_k], the dual of the left
/// action under the Hilbert-Schmidt pairing.
inline ComplexMatrix diamond(const AdjointTuple& v, const AdjointTuple& alpha) {
    if (v.size() != alpha.size())
        throw dimension_mismatch_error("diamond: tuple lengths differ");
    ComplexMatrix out(v.dim());
    for (int k = 0; k < v.size(); ++k) {
        v.components[k].check_same_dim(alpha.components[k]);
        out += commutator(v.components[k], alpha.components[k]);
    }
    return out;
}

/// Advected-variable ansatz alpha_k = (gamma_k/2) [rho, L_k]. Re-derived from
/// rho at every evaluation; the advection ODE is never integrated separately.
inline AdjointTuple advected(const ComplexMatrix& rho, const ACSPSystem& system) {
    std::vector<ComplexMatrix> out;
    out.reserve(system.lindblads.size());
    for (int k = 0; k < system.m(); ++k)
        out.push_back((0.5 * system.rates[k]) * commutator(rho, system.lindblads[k].matrix()));
    return AdjointTuple(std::move(out));
}

/// Coadjoint term of the reduced equation: ad*_xi mu = -[xi, mu] with
/// xi = -iH gives -i[H, mu].
inline ComplexMatrix coadjoint_term(const ComplexMatrix& H, const ComplexMatrix& mu) {
    return cplx(0.0, -1.0) * commutator(H, mu);
}

/// Reduced vector field rho_dot = -i[H,rho] + L <> alpha(rho). With the
/// ansatz above this equals -i[H,rho] - sum_k (gamma_k/2)[L_k,[L_k,rho]],
/// the Hermitian-channel GKSL generator.
inline ComplexMatrix ep_vector_field(const ComplexMatrix& rho, const ACSPSystem& system) {
    rho.check_same_dim(system.H.matrix());
    ComplexMatrix out = coadjoint_term(system.H.matrix(), rho);
    if (system.m() == 0) return out;
    const AdjointTuple alpha = advected(rho, system);
    for (int k = 0; k < system.m(); ++k)
        out += commutator(system.lindblads[k].matrix(), alpha.components[k]);
    return out;
}

/// The same system expressed as channel specs (general-dissipator route);
/// used for the EP-vs-GKSL comparisons.
inline std::vector<ChannelSpec> to_channels(const ACSPSystem& system) {
    std::vector<ChannelSpec> chans;
    chans.reserve(system.lindblads.size());
    for (int k = 0; k < system.m(); ++k)
        chans.emplace_back(system.lindblads[k].matrix(), system.rates[k]);
    return chans;
}

}  // namespace gksl
