#include <catch2/catch_amalgamated.hpp>

#include "gksl/acsp.hpp"
#include "gksl/bloch.hpp"
#include "gksl/channels.hpp"
#include "gksl/liealg.hpp"

using namespace gksl;

TEST_CASE("adjoint torsion", "[acsp]") {
    SECTION("commuting arguments give zero") {
        const AdjointTuple v({pauli::z(), ComplexMatrix::identity(2)});
        const AdjointTuple k = torsion(pauli::z(), v);
        CHECK(k.components[0].max_abs() < 1e-15);
        CHECK(k.components[1].max_abs() < 1e-15);
    }

    SECTION("K(sigma_z, sigma_x) = 4i sigma_y") {
        const AdjointTuple k = torsion(pauli::z(), AdjointTuple({pauli::x()}));
        CHECK((k.components[0] - cplx(0.0, 4.0) * pauli::y()).max_abs() < 1e-15);
    }

    SECTION("equals left action minus right action, componentwise") {
        for (std::uint64_t s = 0; s < 30; ++s) {
            const int n = 2 + static_cast<int>(s % 3);
            const ComplexMatrix xi = random_hermitian(n, 2000 + s).matrix();
            const AdjointTuple v({random_hermitian(n, 2100 + s).matrix(),
                                  random_hermitian(n, 2200 + s).matrix()});
            const AdjointTuple k = torsion(xi, v);
            for (int c = 0; c < v.size(); ++c) {
                const ComplexMatrix left = commutator(xi, v.components[c]);
                const ComplexMatrix right = -1.0 * commutator(xi, v.components[c]);
                CHECK((k.components[c] - (left - right)).max_abs() < 1e-13);
                // factor 2 exactly
                CHECK((k.components[c] - 2.0 * left).max_abs() == 0.0);
            }
        }
    }

    SECTION("equivariance under conjugation") {
        for (std::uint64_t s = 0; s < 20; ++s) {
            const int n = 2 + static_cast<int>(s % 2);
            const ComplexMatrix g = haar_unitary(n, 2300 + s);
            const ComplexMatrix xi = random_hermitian(n, 2400 + s).matrix();
            const AdjointTuple v({random_hermitian(n, 2500 + s).matrix()});
            const ComplexMatrix lhs = conjugate(g, torsion(xi, v).components[0]);
            const ComplexMatrix rhs =
                torsion(conjugate(g, xi), AdjointTuple({conjugate(g, v.components[0])}))
                    .components[0];
            CHECK((lhs - rhs).max_abs() < 1e-10);
        }
    }
}

TEST_CASE("diamond operator", "[acsp]") {
    SECTION("fundamental identity L <> [L,rho] = [L,[L,rho]]") {
        for (std::uint64_t s = 0; s < 30; ++s) {
            const int n = 2 + static_cast<int>(s % 3);
            const ComplexMatrix L = random_hermitian(n, 2600 + s).matrix();
            const ComplexMatrix rho = random_density(n, 2700 + s).matrix();
            const ComplexMatrix lhs =
                diamond(AdjointTuple({L}), AdjointTuple({commutator(L, rho)}));
            CHECK((lhs - commutator(L, commutator(L, rho))).max_abs() < 1e-13);
        }
    }

    SECTION("zero covector") {
        const AdjointTuple v({pauli::x()});
        CHECK(diamond(v, AdjointTuple({ComplexMatrix(2)})).max_abs() == 0.0);
    }

    SECTION("componentwise sum for m = 2") {
        const ComplexMatrix v1 = random_hermitian(3, 1).matrix(),
                            v2 = random_hermitian(3, 2).matrix();
        const ComplexMatrix a1 = random_hermitian(3, 3).matrix(),
                            a2 = random_hermitian(3, 4).matrix();
        const ComplexMatrix got = diamond(AdjointTuple({v1, v2}), AdjointTuple({a1, a2}));
        CHECK((got - (commutator(v1, a1) + commutator(v2, a2))).max_abs() < 1e-13);
    }

    SECTION("duality with the left action under the HS pairing") {
        // <v <> alpha, xi> = -<alpha, xi . v> for Hermitian tuples
        for (std::uint64_t s = 0; s < 30; ++s) {
            const int n = 2 + static_cast<int>(s % 3);
            const AdjointTuple v({random_hermitian(n, 3000 + s).matrix(),
                                  random_hermitian(n, 3100 + s).matrix()});
            const AdjointTuple alpha({random_hermitian(n, 3200 + s).matrix(),
                                      random_hermitian(n, 3300 + s).matrix()});
            const ComplexMatrix xi = random_hermitian(n, 3400 + s).matrix();
            const cplx lhs = hs_inner(diamond(v, alpha), xi);
            cplx rhs{};
            for (int k = 0; k < v.size(); ++k)
                rhs -= hs_inner(alpha.components[k], commutator(xi, v.components[k]));
            CHECK(std::abs(lhs - rhs) < 1e-10);
        }
    }

    SECTION("length mismatch rejected") {
        CHECK_THROWS_AS(diamond(AdjointTuple({pauli::x()}),
                                AdjointTuple({pauli::x(), pauli::y()})),
                        dimension_mismatch_error);
    }
}

TEST_CASE("advected variable ansatz", "[acsp]") {
    SECTION("commuting state gives the zero tuple") {
        const ACSPSystem sys(HermitianOperator(ComplexMatrix(2)),
                             {HermitianOperator(pauli::z())}, {1.5});
        const ComplexMatrix rho = 0.5 * (ComplexMatrix::identity(2) + 0.3 * pauli::z());
        CHECK(advected(rho, sys).components[0].max_abs() < 1e-15);
    }

    SECTION("explicit 2x2 value") {
        // L = sigma_z, rho = (I + sigma_x)/2, gamma = 2: alpha = [rho, sigma_z] = -i sigma_y
        const ACSPSystem sys(HermitianOperator(ComplexMatrix(2)),
                             {HermitianOperator(pauli::z())}, {2.0});
        const ComplexMatrix rho = 0.5 * (ComplexMatrix::identity(2) + pauli::x());
        const ComplexMatrix alpha = advected(rho, sys).components[0];
        CHECK((alpha - cplx(0.0, -1.0) * pauli::y()).max_abs() < 1e-15);
    }

    SECTION("matching condition [L, alpha] = -(gamma/2)[L,[L,rho]]") {
        for (std::uint64_t s = 0; s < 30; ++s) {
            const int n = 2 + static_cast<int>(s % 3);
            const double gamma = 0.1 + 0.2 * static_cast<double>(s);
            const ComplexMatrix L = random_hermitian(n, 3500 + s).matrix();
            const ACSPSystem sys(HermitianOperator(ComplexMatrix(n)), {HermitianOperator(L)},
                                 {gamma});
            const ComplexMatrix rho = random_density(n, 3600 + s).matrix();
            const ComplexMatrix alpha = advected(rho, sys).components[0];
            CHECK((commutator(L, alpha) + 0.5 * gamma * commutator(L, commutator(L, rho)))
                      .max_abs() < 1e-13);
        }
    }
}

TEST_CASE("coadjoint term", "[acsp]") {
    SECTION("maximally mixed state is fixed") {
        const ComplexMatrix mu = ComplexMatrix::identity(3) * (1.0 / 3.0);
        CHECK(coadjoint_term(random_hermitian(3, 9).matrix(), mu).max_abs() < 1e-15);
    }

    SECTION("Bloch form is Omega x r") {
        const std::array<double, 3> omega{0.3, -1.1, 0.7}, r{0.2, 0.5, -0.4};
        const Basis b2 = standard_basis(2);
        const ComplexMatrix H =
            0.5 * (omega[0] * pauli::x() + omega[1] * pauli::y() + omega[2] * pauli::z());
        const ComplexMatrix rho = 0.5 * (ComplexMatrix::identity(2) + r[0] * pauli::x() +
                                         r[1] * pauli::y() + r[2] * pauli::z());
        const std::vector<double> rdot = coefficients(coadjoint_term(H, rho), b2);
        const std::array<double, 3> want = cross(omega, r);
        for (int a = 0; a < 3; ++a) CHECK(rdot[a] == Catch::Approx(want[a]).margin(1e-14));
    }

    SECTION("output stays Hermitian") {
        for (std::uint64_t s = 0; s < 20; ++s) {
            const ComplexMatrix H = random_hermitian(3, 3700 + s).matrix();
            const ComplexMatrix rho = random_density(3, 3800 + s).matrix();
            CHECK(coadjoint_term(H, rho).is_hermitian(1e-12));
        }
    }
}

TEST_CASE("reduced vector field equals the GKSL generator", "[acsp]") {
    SECTION("fixed point with a commuting channel") {
        const ACSPSystem sys(HermitianOperator(ComplexMatrix(2)),
                             {HermitianOperator(pauli::z())}, {1.0});
        const ComplexMatrix rho = 0.5 * (ComplexMatrix::identity(2) - 0.2 * pauli::z());
        CHECK(ep_vector_field(rho, sys).max_abs() < 1e-15);
    }

    SECTION("single hermitian channel matches the double-commutator generator") {
        for (std::uint64_t s = 0; s < 50; ++s) {
            const int n = 2 + static_cast<int>(s % 3);
            const ComplexMatrix H = random_hermitian(n, 3900 + s).matrix();
            const ComplexMatrix L = random_hermitian(n, 4000 + s).matrix();
            const double gamma = 0.05 + 0.1 * static_cast<double>(s);
            const ComplexMatrix rho = random_density(n, 4100 + s).matrix();
            const ACSPSystem sys(HermitianOperator(H), {HermitianOperator(L)}, {gamma});
            const ComplexMatrix direct = coadjoint_term(H, rho) +
                                         dissipator_hermitian(L, gamma, rho);
            CHECK((ep_vector_field(rho, sys) - direct).max_abs() < 1e-14);
        }
    }

    SECTION("two-channel qutrit dephasing matches the multi-channel generator") {
        const Basis b3 = standard_basis(3);
        const ComplexMatrix l3 = b3.elements[2], l8 = b3.elements[7];
        const double g1 = 0.8, g2 = 0.45;
        const ComplexMatrix H = random_hermitian(3, 4200).matrix();
        const ACSPSystem sys(HermitianOperator(H),
                             {HermitianOperator(l3), HermitianOperator(l8)}, {g1, g2});
        for (std::uint64_t s = 0; s < 20; ++s) {
            const ComplexMatrix rho = random_density(3, 4300 + s).matrix();
            const ComplexMatrix direct =
                gksl_generator(H, {ChannelSpec(l3, g1), ChannelSpec(l8, g2)}, rho);
            CHECK((ep_vector_field(rho, sys) - direct).max_abs() < 1e-14);
        }
    }

    SECTION("generator equivalence across dims and channel counts") {
        // the central structural check, kept small here; the acceptance suite
        // runs the full 10^3-sample version
        for (std::uint64_t s = 0; s < 100; ++s) {
            const int n = 2 + static_cast<int>(s % 3);
            const int m = 1 + static_cast<int>(s % 3);
            const ComplexMatrix H = random_hermitian(n, 4400 + s).matrix();
            std::vector<HermitianOperator> ls;
            std::vector<double> gs;
            std::vector<ChannelSpec> chans;
            for (int k = 0; k < m; ++k) {
                const ComplexMatrix L =
                    random_hermitian(n, 4500 + 10 * s + static_cast<std::uint64_t>(k)).matrix();
                const double g = 0.1 + 0.15 * k;
                ls.emplace_back(L);
                gs.push_back(g);
                chans.emplace_back(L, g);
            }
            const ACSPSystem sys(HermitianOperator(H), std::move(ls), std::move(gs));
            const ComplexMatrix rho = random_density(n, 4600 + s).matrix();
            CHECK((ep_vector_field(rho, sys) - gksl_generator(H, chans, rho)).max_abs() <= 1e-13);
        }
    }

    SECTION("rate and operator count must match") {
        CHECK_THROWS_AS(ACSPSystem(HermitianOperator(ComplexMatrix(2)),
                                   {HermitianOperator(pauli::z())}, {1.0, 2.0}),
                        precondition_error);
        CHECK_THROWS_AS(ACSPSystem(HermitianOperator(ComplexMatrix(2)),
                                   {HermitianOperator(pauli::z())}, {-0.5}),
                        precondition_error);
    }
}
