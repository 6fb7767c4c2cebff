#include "doctest.h"
#include "hypoisson/specfun.hpp"

using namespace hypoisson;

namespace {

/// direct power series of 2F1, convergent for |z| < 1; test-side oracle
cplx f21_direct(cplx a, cplx b, cplx c, double z) {
    cplx term = 1.0, sum = 1.0;
    for (int k = 0; k < 200000; ++k) {
        const double kd = k;
        term *= (a + kd) * (b + kd) / ((c + kd) * (kd + 1.0)) * z;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

}  // namespace

TEST_CASE("log-gamma basics") {
    CHECK(std::abs(ln_gamma(cplx(1.0))) < 1e-14);
    CHECK(gamma_fn(cplx(0.5)).real() == doctest::Approx(1.7724538509).epsilon(1e-10));
    CHECK(gamma_fn(cplx(5.0)).real() == doctest::Approx(24.0).epsilon(1e-13));

    Rng rng(123);
    for (int rep = 0; rep < 40; ++rep) {
        const cplx z(rng.uniform(-4.0, 4.0), rng.uniform(-4.0, 4.0));
        if (std::abs(z - std::round(z.real())) < 0.05 && z.real() <= 0.5) continue;
        const cplx lhs = gamma_fn(z + 1.0);
        const cplx rhs = z * gamma_fn(z);
        CHECK(std::abs(lhs - rhs) / std::abs(rhs) < 1e-12);
    }

    CHECK_THROWS_AS(ln_gamma(cplx(0.0)), pole_error);
    CHECK_THROWS_AS(ln_gamma(cplx(-3.0)), pole_error);
}

TEST_CASE("gauss_2f1") {
    CHECK(gauss_2f1(cplx(0.3, 0.2), cplx(1.1), cplx(2.0), 0.0) == cplx(1.0));
    CHECK(gauss_2f1(cplx(0.3, 0.2), cplx(0.0), cplx(2.0), -0.7) == cplx(1.0));

    // 2F1(1,1;2;z) = -log(1-z)/z at z = -1 gives log 2
    CHECK(std::abs(gauss_2f1(cplx(1), cplx(1), cplx(2), -1.0).real() - std::log(2.0)) < 1e-12);

    // Pfaff route vs direct series (the direct sum needs |z| < 1 to converge
    // geometrically, so the comparison stays inside [-0.9, 0])
    Rng rng(7);
    for (int rep = 0; rep < 30; ++rep) {
        const cplx a(rng.uniform(-1.5, 2.5), rng.uniform(-1, 1));
        const cplx b(rng.uniform(-1.5, 2.5), rng.uniform(-1, 1));
        const cplx c(rng.uniform(0.5, 3.0), rng.uniform(-0.5, 0.5));
        const double z = rng.uniform(-0.9, 0.0);
        const cplx got = gauss_2f1(a, b, c, z);
        const cplx want = f21_direct(a, b, c, z);
        CHECK(std::abs(got - want) / std::max(1.0, std::abs(want)) < 1e-12);
        // exact symmetry in (a, b)
        CHECK(gauss_2f1(b, a, c, z) == got);
    }

    CHECK_THROWS_AS(gauss_2f1(cplx(1), cplx(1), cplx(-2.0), -0.5), std::domain_error);
    CHECK_THROWS_AS(gauss_2f1(cplx(0.3, 0.1), cplx(0.7), cplx(1.5), -1e12), accuracy_error);
    // polynomial cases stay valid arbitrarily deep in the left half line
    CHECK(std::abs(gauss_2f1(cplx(-1.0), cplx(0.7), cplx(1.5), -1e12)) > 0.0);
}

TEST_CASE("jacobi function basics") {
    CHECK(jacobi_phi(2.0, -0.5, cplx(0.0, -1.3), 0.0) == cplx(1.0));

    // vanishing numerator parameter: phi == 1 for i nu = rho, alpha = rho - 1/2
    const double rho = 1.5;
    for (double t : {0.3, 1.0, 2.5, 6.0})
        CHECK(std::abs(jacobi_phi(rho - 0.5, -0.5, cplx(0.0, -rho), t) - 1.0) < 1e-13);

    // evenness in nu
    Rng rng(31);
    for (int rep = 0; rep < 20; ++rep) {
        const cplx nu(rng.uniform(-2, 2), rng.uniform(-2, 2));
        const double t = rng.uniform(0.0, 3.0);
        const cplx a = jacobi_phi(2.0, -0.5, nu, t);
        const cplx b = jacobi_phi(2.0, -0.5, -nu, t);
        CHECK(std::abs(a - b) < 1e-12 * std::max(1.0, std::abs(a)));
    }

    // the quadratic argument-halving used for beta = -1/2 agrees with the
    // plain hypergeometric definition
    for (int rep = 0; rep < 10; ++rep) {
        const cplx nu(rng.uniform(-2, 2), rng.uniform(-2, 2));
        const double alpha = rng.uniform(0.5, 3.0);
        const double t = rng.uniform(0.1, 1.4);
        const cplx inu = cplx(0, 1) * nu;
        const cplx a = (inu + alpha + 0.5) / 2.0, b = (-inu + alpha + 0.5) / 2.0;
        const double sh = std::sinh(t);
        const cplx direct = gauss_2f1(a, b, cplx(alpha + 1.0), -sh * sh);
        const cplx halved = jacobi_phi(alpha, -0.5, nu, t);
        CHECK(std::abs(direct - halved) < 1e-11 * std::max(1.0, std::abs(direct)));
    }
}

TEST_CASE("jacobi asymptotics and the c-constant") {
    // The scaled residual decreases monotonically on t in {6,8,10,12}.  Its
    // decay rate is e^{-min(2, 2 Re(i nu)) t}: at Re(i nu) = 1.5 the residual
    // is far below 1e-5 by t = 12, while at Re(i nu) = 0.5 the honest value
    // there is ~1.5e-4 (measured), so the bound is rate-dependent.
    const double alpha = 1.5, beta = -0.5;
    for (double re_inu : {0.5, 1.5}) {
        const cplx nu = cplx(0.0, -re_inu);  // i nu = re_inu
        const cplx cab = jacobi_c(alpha, beta, nu);
        double prev = 1e300;
        for (double t : {6.0, 8.0, 10.0, 12.0}) {
            const cplx scaled = std::exp((alpha + beta + 1.0 - re_inu) * t) *
                                jacobi_phi(alpha, beta, nu, t);
            const double resid = std::abs(scaled - cab);
            CHECK(resid < prev);
            prev = resid;
            if (t == 12.0) CHECK(resid < (re_inu > 1.0 ? 1e-5 : 2e-4));
        }
        // measured rate matches e^{-min(2, 2 Re(i nu)) t} within 20%
        const double r10 = std::abs(std::exp((alpha + beta + 1.0 - re_inu) * 10.0) *
                                        jacobi_phi(alpha, beta, nu, 10.0) - cab);
        const double r12 = std::abs(std::exp((alpha + beta + 1.0 - re_inu) * 12.0) *
                                        jacobi_phi(alpha, beta, nu, 12.0) - cab);
        const double rate = std::log(r10 / r12) / 2.0;
        const double expect = std::min(2.0, 2.0 * re_inu);
        CHECK(rate == doctest::Approx(expect).epsilon(0.2));
    }

    // c_{rho-1/2,-1/2}(-ix) against the numeric limit at t = 12 (x = 1.3, n = 4)
    {
        const double rho = 1.5, x = 1.3;
        const cplx nu(0.0, -x);
        const cplx limit = std::exp((rho - x) * 12.0) * jacobi_phi(rho - 0.5, -0.5, nu, 12.0);
        CHECK(std::abs(limit - jacobi_c(rho - 0.5, -0.5, nu)) < 1e-6);
    }

    // ratio law c_{n/2,-1/2} = 2n/(i lambda + rho) c_{n/2-1,-1/2}
    Rng rng(41);
    for (int n : {4, 5}) {
        const double rho = (n - 1) / 2.0;
        for (int rep = 0; rep < 10; ++rep) {
            const cplx mu(rng.uniform(0.3, 2.5), rng.uniform(-1.5, 1.5));
            const cplx lam = cplx(0, -1) * mu;
            const cplx lhs = jacobi_c(n / 2.0, -0.5, lam);
            const cplx rhs = 2.0 * n / (mu + rho) * jacobi_c(n / 2.0 - 1.0, -0.5, lam);
            CHECK(std::abs(lhs - rhs) / std::abs(rhs) < 1e-12);
        }
    }

    // no pole at i nu = rho for n = 4
    CHECK(std::abs(jacobi_c(1.5, -0.5, cplx(0.0, -1.5))) > 0.1);
}

TEST_CASE("spectral parameter validation") {
    const SpectralParams ok_q1{4, 1, 1, cplx(1.5, 0)};
    const SpectralParams ok_q0{4, 1, 0, cplx(1.0, 0)};
    CHECK_NOTHROW(ok_q1.validate());
    CHECK_NOTHROW(ok_q0.validate());

    const SpectralParams bad_p{4, 2, 2, cplx(1, 0)};
    const SpectralParams bad_q{4, 1, 2, cplx(1, 0)};
    const SpectralParams bad_low{4, 0, -1, cplx(1, 0)};
    CHECK_THROWS_AS(bad_p.validate(), std::domain_error);
    CHECK_THROWS_AS(bad_q.validate(), std::domain_error);
    CHECK_THROWS_AS(bad_low.validate(), std::domain_error);

    const SpectralParams excluded{4, 1, 0, cplx(1.5, 0)};
    const SpectralParams divergent{4, 1, 1, cplx(-0.5, 0)};
    CHECK(ok_q1.inversion_admissible());
    CHECK_FALSE(excluded.inversion_admissible());
    CHECK(ok_q0.inversion_admissible());
    CHECK_FALSE(divergent.inversion_admissible());

    CHECK(ok_q1.c_pq() == doctest::Approx(std::sqrt(4.0 / 3.0)).epsilon(1e-14));
    CHECK(ok_q0.c_pq() == doctest::Approx(2.0).epsilon(1e-14));
}
