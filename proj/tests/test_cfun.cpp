#include "doctest.h"
#include "hypoisson/cfun.hpp"
#include "hypoisson/eisenstein.hpp"

using namespace hypoisson;

TEST_CASE("closed form c(lambda)") {
    // c(lambda) coincides with the Jacobi constant c_{n/2-1,-1/2}(lambda)
    Rng rng(3);
    for (int n : {4, 5, 6}) {
        for (int rep = 0; rep < 10; ++rep) {
            const cplx mu(rng.uniform(0.3, 2.5), rng.uniform(-1.5, 1.5));
            SpectralParams sp{n, 0, 0, mu};
            const cplx via_jacobi = jacobi_c(n / 2.0 - 1.0, -0.5, cplx(0, -1) * mu);
            CHECK(std::abs(c_scalar(sp) - via_jacobi) / std::abs(via_jacobi) < 1e-13);
        }
    }

    // cancellation at mu = rho for n = 4
    CHECK(std::abs(c_scalar(SpectralParams{4, 0, 0, cplx(1.5, 0)}) - 1.0) < 1e-14);

    for (double mu : {0.5, 1.0, 2.0}) {
        const cplx v = c_scalar(SpectralParams{4, 0, 0, cplx(mu, 0)});
        CHECK(std::abs(v) > 1e-3);
        CHECK(std::isfinite(v.real()));
    }

    const SpectralParams at_pole{4, 0, 0, cplx(0.0, 0.0)};
    CHECK_THROWS_AS(c_scalar(at_pole), pole_error);
}

TEST_CASE("scalar components") {
    // p = q = 0 reduces to c(lambda) exactly
    Rng rng(5);
    for (int rep = 0; rep < 10; ++rep) {
        SpectralParams sp{4, 0, 0, cplx(rng.uniform(0.3, 2.0), rng.uniform(-1, 1))};
        CHECK(std::abs(c_component(sp, 0) - c_scalar(sp)) < 1e-15);
    }

    // zero of the q = p-1 component at mu = rho_{p-1} = rho - p + 1
    SpectralParams sp_excl{4, 1, 0, cplx(1.5, 0.0)};
    CHECK(std::abs(c_component(sp_excl, 0)) < 1e-15);

    // worked value: n = 4, p = q = 1, mu = 3/2 gives (2/3) c = 2/3
    SpectralParams sp{4, 1, 1, cplx(1.5, 0.0)};
    CHECK(c_component(sp, 1).real() == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

    // zero locus: c_{p-1} vanishes only at the excluded point; c_p does not
    for (int rep = 0; rep < 20; ++rep) {
        const cplx mu(rng.uniform(0.2, 2.5), rng.uniform(-1, 1));
        SpectralParams s{4, 1, 1, mu};
        if (std::abs(mu - cplx(1.5, 0)) > 0.05)
            CHECK(std::abs(c_component(s, 0)) > 1e-4);
        CHECK(std::abs(c_component(s, 1)) > 1e-4);
    }
}

TEST_CASE("block-scalar endomorphism") {
    // p = 0: scalar matrix
    SpectralParams sp0{4, 0, 0, cplx(1.2, 0.3)};
    const CMat m0 = c_matrix(sp0);
    CHECK(m0.rows() == 1);
    CHECK(std::abs(m0(0, 0) - c_scalar(sp0)) < 1e-15);

    SpectralParams sp{4, 1, 1, cplx(1.1, -0.4)};
    const CMat cm = c_matrix(sp);
    Rng rng(7);

    // || c iota_q v || = |c_q| ||v|| on both blocks
    for (int q : {0, 1}) {
        const RMat io = iota_matrix(4, 1, q);
        const cplx cq = c_component(sp, q);
        for (int rep = 0; rep < 10; ++rep) {
            CVec v(binomial(3, q));
            for (auto& x : v) x = rng.cgaussian();
            const CVec emb = io * v;
            CHECK(std::abs(norm2(cm * emb) - std::abs(cq) * norm2(v)) < 1e-12);
        }
    }

    // Hilbert-Schmidt identity || c iota L ||_HS = |c_q| ||L||_HS
    for (int q : {0, 1}) {
        const RMat io = iota_matrix(4, 1, q);
        const cplx cq = c_component(sp, q);
        CMat L(binomial(3, q), 3);
        for (int i = 0; i < L.rows(); ++i)
            for (int j = 0; j < 3; ++j) L(i, j) = rng.cgaussian();
        const CMat lhs = cm * (to_complex(io) * L);
        CHECK(std::abs(frobenius(lhs) - std::abs(cq) * frobenius(L)) < 1e-12);
    }
}

TEST_CASE("Nbar-integral oracle, scalar case n = 2") {
    SpectralParams sp{2, 0, 0, cplx(1.0, 0.0)};
    const OracleResult res = c_integral_oracle(sp, 50.0, 800);
    CHECK(std::abs(res.matrix(0, 0) - c_scalar(sp)) < 1e-5);
    CHECK(res.tail_estimate < 1e-2);

    const SpectralParams neg{2, 0, 0, cplx(-1.0, 0)};
    CHECK_THROWS_AS(c_integral_oracle(neg, 10, 50), divergence_error);
    const SpectralParams big_n{5, 1, 1, cplx(1.0, 0)};
    CHECK_THROWS_AS(c_integral_oracle(big_n, 10, 50), std::domain_error);
}

TEST_CASE("Nbar-integral oracle, vector case n = 4") {
    SpectralParams sp{4, 1, 1, cplx(1.5, 0.0)};
    const OracleResult res = c_integral_oracle(sp, 24.0, 96);

    // Schur block structure emerges numerically: off-block entries vanish
    const RMat proj0 = block_projector(4, 1, 0);
    const RMat proj1 = block_projector(4, 1, 1);
    double offblock = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (proj0(i, j) == 0.0 && proj1(i, j) == 0.0)
                offblock = std::max(offblock, std::abs(res.matrix(i, j)));
    CHECK(offblock < 1e-6);

    const ScalarComponents sc = scalar_components(res.matrix, 4, 1);
    CHECK(std::abs(sc.f_q - c_component(sp, 1)) < 5e-4);
    CHECK(std::abs(sc.f_qminus - c_component(sp, 0)) < 5e-4);
}

TEST_CASE("harmonic-case constant") {
    // p = 0: the harmonic-case constant degenerates to c(lambda)|_{mu=rho} = 1
    CHECK(harmonic_constant(4, 0) == doctest::Approx(1.0).epsilon(1e-13));

    // consistency with c_{p,p} c_p(lambda,p) at mu = rho - p
    for (int p : {0, 1}) {
        const double rho = 1.5;
        SpectralParams sp{4, p, p, cplx(rho - p, 0.0)};
        const double lhs = 2.0 * (rho - p) / (2.0 * rho - p) * harmonic_constant(4, p);
        const cplx rhs = sp.c_pq() * c_component(sp, p);
        CHECK(std::abs(lhs - rhs) < 1e-10);
    }
}
