#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "gksl/acsp.hpp"
#include "gksl/brackets.hpp"
#include "gksl/channels.hpp"
#include "gksl/liealg.hpp"
#include "gksl/matrix.hpp"

namespace gksl {

inline constexpr double kPsdFloorIntegration = 1e-6;  // transient PSD floor along trajectories

struct SimulationConfig {
    double t_final = 1.0;
    double dt = 1e-3;
    int record_every = 1;
    bool renormalize = false;

    void validate() const {
        if (!(dt > 0.0)) throw precondition_error("simulation: dt must be > 0");
        if (!(t_final >= 0.0)) throw precondition_error("simulation: t_final must be >= 0");
        if (record_every < 1) throw precondition_error("simulation: record_every must be >= 1");
    }
    long total_steps() const { return std::lround(std::ceil(t_final / dt - 1e-12)); }
};

/// Time series of states with per-record diagnostics. Trace drift is logged,
/// never silently corrected (unless renormalize was requested).
struct Trajectory {
    std::vector<double> times;
    std::vector<ComplexMatrix> states;
    std::vector<double> purity;
    std::vector<double> trace_error;
    std::vector<double> min_eig;
    // ||rho_perp||_HS relative to each Hermitian channel, one inner vector per
    // record point (empty when no channel is Hermitian)
    std::vector<std::vector<double>> transverse_norm;
    std::vector<double> contact_z;  // filled by simulate_contact only

    size_t size() const { return times.size(); }
};

struct ContactState {
    ComplexMatrix rho;
    double z = 0.0;
};

inline ContactState operator+(ContactState a, const ContactState& b) {
    a.rho += b.rho;
    a.z += b.z;
    return a;
}
inline ContactState operator*(double s, ContactState a) {
    a.rho *= cplx(s, 0.0);
    a.z *= s;
    return a;
}

namespace detail {
inline ComplexMatrix scale(const ComplexMatrix& m, double s) { return m * s; }
inline ContactState scale(const ContactState& m, double s) { return s * m; }
inline bool finite(const ComplexMatrix& m) { return m.all_finite(); }
inline bool finite(const ContactState& s) { return s.rho.all_finite() && std::isfinite(s.z); }
}  // namespace detail

/// One classical RK4 step. Works for any state with +, scalar scaling and a
/// finiteness test (density matrices and contact pairs here).
template <class State, class Field>
State rk4_step(const Field& field, const State& state, double dt, double t = 0.0) {
    if (!(dt > 0.0)) throw precondition_error("rk4_step: dt must be > 0");
    const State k1 = field(state);
    const State k2 = field(state + detail::scale(k1, 0.5 * dt));
    const State k3 = field(state + detail::scale(k2, 0.5 * dt));
    const State k4 = field(state + detail::scale(k3, dt));
    if (!detail::finite(k1) || !detail::finite(k2) || !detail::finite(k3) || !detail::finite(k4))
        throw integration_error("non-finite derivative at t = " + std::to_string(t));
    State out = state + detail::scale(k1 + detail::scale(k2, 2.0) + detail::scale(k3, 2.0) + k4,
                                      dt / 6.0);
    return out;
}

namespace detail {

inline void record_point(Trajectory& traj, double t, const ComplexMatrix& rho,
                         const std::vector<const ComplexMatrix*>& hermitian_ls) {
    traj.times.push_back(t);
    traj.states.push_back(rho);
    traj.purity.push_back(hs_inner(rho, rho).real());
    traj.trace_error.push_back(std::abs(rho.trace() - cplx(1.0, 0.0)));
    const double mineig = min_eigenvalue(0.5 * (rho + rho.adjoint()));
    traj.min_eig.push_back(mineig);
    std::vector<double> tn;
    tn.reserve(hermitian_ls.size());
    for (const auto* L : hermitian_ls) {
        auto [par, perp] = commutant_projection(*L, rho);
        tn.push_back(hs_norm(perp));
    }
    traj.transverse_norm.push_back(std::move(tn));
    if (mineig < -kPsdFloorIntegration)
        throw integration_error("state left the PSD cone (min eigenvalue " +
                                std::to_string(mineig) + ") at t = " + std::to_string(t));
}

template <class Step, class Record>
void run_fixed_grid(const SimulationConfig& config, const Step& step, const Record& record) {
    config.validate();
    record(0.0);
    const long steps = config.total_steps();
    for (long k = 0; k < steps; ++k) {
        const double t = k * config.dt;
        step(t);
        if ((k + 1) % config.record_every == 0 || k + 1 == steps) record((k + 1) * config.dt);
    }
}

}  // namespace detail

/// Integrate the GKSL generator with fixed-step RK4, recording diagnostics
/// every record_every steps (plus the initial and final points). Aborts with
/// an integration_error if the state leaves the PSD cone beyond -1e-6 or
/// grows by more than a factor 10.
inline Trajectory simulate(const DensityMatrix& rho0, const ComplexMatrix& H,
                           const std::vector<ChannelSpec>& channels,
                           const SimulationConfig& config) {
    std::vector<const ComplexMatrix*> herm_ls;
    for (const auto& ch : channels)
        if (ch.L.is_hermitian(kHermTol)) herm_ls.push_back(&ch.L);

    ComplexMatrix rho = rho0.matrix();
    const double scale0 = hs_norm(rho);
    auto field = [&](const ComplexMatrix& r) { return gksl_generator(H, channels, r); };

    Trajectory traj;
    detail::run_fixed_grid(
        config,
        [&](double t) {
            rho = rk4_step(field, rho, config.dt, t);
            if (config.renormalize) rho *= 1.0 / rho.trace().real();
            if (hs_norm(rho) > 10.0 * scale0)
                throw integration_error("trajectory norm grew by more than 10x at t = " +
                                        std::to_string(t + config.dt));
        },
        [&](double t) { detail::record_point(traj, t, rho, herm_ls); });
    return traj;
}

inline Trajectory simulate(const DensityMatrix& rho0, const ACSPSystem& system,
                           const SimulationConfig& config) {
    std::vector<const ComplexMatrix*> herm_ls;
    for (const auto& l : system.lindblads) herm_ls.push_back(&l.matrix());

    ComplexMatrix rho = rho0.matrix();
    const double scale0 = hs_norm(rho);
    auto field = [&](const ComplexMatrix& r) { return ep_vector_field(r, system); };

    Trajectory traj;
    detail::run_fixed_grid(
        config,
        [&](double t) {
            rho = rk4_step(field, rho, config.dt, t);
            if (config.renormalize) rho *= 1.0 / rho.trace().real();
            if (hs_norm(rho) > 10.0 * scale0)
                throw integration_error("trajectory norm grew by more than 10x at t = " +
                                        std::to_string(t + config.dt));
        },
        [&](double t) { detail::record_point(traj, t, rho, herm_ls); });
    return traj;
}

/// Coupled (rho, z) integration for a single Hermitian channel:
///   rho_dot = -i[H,rho] - (gamma/2)[L,[L,rho]],
///   z_dot   = -(gamma/2) ||[L,rho]||^2_HS.
/// Along the exact flow z tracks (1/2) Tr(rho^2) up to an additive constant.
inline Trajectory simulate_contact(const DensityMatrix& rho0, double z0, const ComplexMatrix& H,
                                   const ComplexMatrix& L, double gamma,
                                   const SimulationConfig& config) {
    if (!L.is_hermitian(kHermTol)) throw precondition_error("simulate_contact: L not Hermitian");
    if (!(gamma >= 0.0)) throw precondition_error("simulate_contact: gamma must be >= 0");

    auto field = [&](const ContactState& s) {
        ContactState d;
        d.rho = metriplectic_field(s.rho, H, L, gamma);
        const double c = hs_norm(commutator(L, s.rho));
        d.z = -0.5 * gamma * c * c;
        return d;
    };

    ContactState s{rho0.matrix(), z0};
    const double scale0 = hs_norm(s.rho);
    std::vector<const ComplexMatrix*> herm_ls{&L};

    Trajectory traj;
    detail::run_fixed_grid(
        config,
        [&](double t) {
            s = rk4_step(field, s, config.dt, t);
            if (hs_norm(s.rho) > 10.0 * scale0)
                throw integration_error("trajectory norm grew by more than 10x at t = " +
                                        std::to_string(t + config.dt));
        },
        [&](double t) {
            detail::record_point(traj, t, s.rho, herm_ls);
            traj.contact_z.push_back(s.z);
        });
    return traj;
}

struct ComparisonReport {
    double max_deviation = 0.0;
    long times_checked = 0;
    int n = 0;
    int m = 0;
};

/// Integrate the reduced (EP) field and the general-form GKSL generator from
/// the same initial state on identical step grids and report the largest
/// max-norm deviation over the recorded times.
inline ComparisonReport compare_generators(const DensityMatrix& rho0, const ComplexMatrix& H,
                                           const std::vector<ChannelSpec>& channels,
                                           const SimulationConfig& config) {
    std::vector<HermitianOperator> ls;
    std::vector<double> rates;
    for (const auto& ch : channels) {
        if (!ch.L.is_hermitian(kHermTol))
            throw precondition_error(
                "compare_generators: the reduced field requires Hermitian channels");
        ls.emplace_back(ch.L);
        rates.push_back(ch.gamma);
    }
    const ACSPSystem system(HermitianOperator(H), std::move(ls), std::move(rates));

    ComplexMatrix rho_ep = rho0.matrix();
    ComplexMatrix rho_gksl = rho0.matrix();
    auto ep = [&](const ComplexMatrix& r) { return ep_vector_field(r, system); };
    auto gksl = [&](const ComplexMatrix& r) { return gksl_generator(H, channels, r); };

    ComparisonReport report;
    report.n = rho0.dim();
    report.m = static_cast<int>(channels.size());
    detail::run_fixed_grid(
        config,
        [&](double t) {
            rho_ep = rk4_step(ep, rho_ep, config.dt, t);
            rho_gksl = rk4_step(gksl, rho_gksl, config.dt, t);
        },
        [&](double) {
            report.max_deviation = std::max(report.max_deviation, (rho_ep - rho_gksl).max_abs());
            ++report.times_checked;
        });
    return report;
}

}  // namespace gksl
