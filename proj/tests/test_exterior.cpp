#include "doctest.h"
#include "hypoisson/exterior.hpp"

using namespace hypoisson;

namespace {

PForm random_form(int n, int p, Rng& rng) {
    PForm w(n, p);
    for (auto& c : w.c) c = rng.cgaussian();
    return w;
}

}  // namespace

TEST_CASE("multi-index rank/unrank") {
    CHECK(rank({1, 2}, 4) == 0);
    CHECK(unrank(0, 4, 2) == MultiIndex{1, 2});

    // enumeration oracle: all 2-subsets of {1..4} in lexicographic order
    std::vector<MultiIndex> all;
    for (int a = 1; a <= 4; ++a)
        for (int b = a + 1; b <= 4; ++b) all.push_back({a, b});
    CHECK(all[5] == MultiIndex{3, 4});
    CHECK(rank({3, 4}, 4) == 5);

    for (int n : {4, 5, 6})
        for (int p : {0, 1, 2, 3})
            for (int r = 0; r < binomial(n, p); ++r) CHECK(rank(unrank(r, n, p), n) == r);

    CHECK_THROWS_AS(rank({2, 1}, 4), std::domain_error);
    CHECK_THROWS_AS(rank({1, 5}, 4), std::domain_error);
    CHECK_THROWS_AS(unrank(6, 4, 2), std::domain_error);
}

TEST_CASE("inner product on basis forms and decomposables") {
    const PForm e12 = basis_form(4, 2, {1, 2});
    const PForm e13 = basis_form(4, 2, {1, 3});
    CHECK(inner(e12, e12) == cplx(1.0));
    CHECK(inner(e12, e13) == cplx(0.0));

    // (e1 + e3) ^ e2 = e1^e2 - e2^e3; Gram determinant gives <e12, .> = 1
    PForm mixed(4, 2);
    mixed.c[rank({1, 2}, 4)] = 1.0;
    mixed.c[rank({2, 3}, 4)] = -1.0;
    CHECK(inner(e12, mixed) == cplx(1.0));

    // conjugate-linear in the second slot
    Rng rng(3);
    const PForm a = random_form(4, 2, rng), b = random_form(4, 2, rng);
    const cplx s(0.7, -0.4);
    CHECK(std::abs(inner(a, s * b) - std::conj(s) * inner(a, b)) < 1e-14);

    CHECK_THROWS_AS(inner(e12, basis_form(4, 1, {1})), std::domain_error);
    CHECK_THROWS_AS(inner(e12, basis_form(5, 2, {1, 2})), std::domain_error);
}

TEST_CASE("interior product signs") {
    const PForm e12 = basis_form(3, 2, {1, 2});
    const PForm i2 = interior(unit_vector(3, 2), e12);
    CHECK(i2.c[rank({1}, 3)] == cplx(-1.0));  // (-1)^{r-1} with r = 2
    CHECK(norm2(interior(unit_vector(3, 3), e12)) == 0.0);

    const PForm e123 = basis_form(3, 3, {1, 2, 3});
    const PForm i1 = interior(unit_vector(3, 1), e123);
    CHECK(i1.c[rank({2, 3}, 3)] == cplx(1.0));

    PForm scalar(3, 0);
    scalar.c[0] = 1.0;
    CHECK_THROWS_AS(interior(unit_vector(3, 1), scalar), std::domain_error);
}

TEST_CASE("exterior product") {
    const PForm e2 = basis_form(3, 1, {2});
    const PForm w = exterior_mul(unit_vector(3, 1), e2);
    CHECK(w.c[rank({1, 2}, 3)] == cplx(1.0));
    CHECK(norm2(exterior_mul(unit_vector(3, 1), basis_form(3, 2, {1, 2}))) == 0.0);
    CHECK_THROWS_AS(exterior_mul(unit_vector(3, 1), basis_form(3, 3, {1, 2, 3})),
                    std::domain_error);
}

TEST_CASE("adjointness of interior and exterior products") {
    Rng rng(17);
    for (int n : {3, 4, 5})
        for (int p : {1, 2}) {
            for (int rep = 0; rep < 20; ++rep) {
                RVec v(n);
                for (auto& x : v) x = rng.gaussian();
                const PForm w = random_form(n, p, rng);
                const PForm xi = random_form(n, p - 1, rng);
                CHECK(std::abs(inner(interior(v, w), xi) - inner(w, exterior_mul(v, xi))) <
                      1e-12);
            }
        }
}

TEST_CASE("hodge star") {
    const PForm s = hodge_star(basis_form(3, 2, {1, 2}));
    CHECK(s.c[rank({3}, 3)] == cplx(1.0));

    PForm one(2, 0);
    one.c[0] = 1.0;
    CHECK(hodge_star(one).c[rank({1, 2}, 2)] == cplx(1.0));

    Rng rng(5);
    for (int n : {3, 4, 5})
        for (int p = 0; p <= n; ++p) {
            const PForm w = random_form(n, p, rng);
            const PForm ss = hodge_star(hodge_star(w));
            const double sign = (p * (n - p)) % 2 == 0 ? 1.0 : -1.0;
            CHECK(norm2(ss - sign * w) < 1e-14);
        }
}

TEST_CASE("tau_p action") {
    Rng rng(23);
    const PForm e12 = basis_form(4, 2, {1, 2});
    CHECK(norm2(tau_apply(RMat::identity(4), e12) - e12) == 0.0);

    // rotation by pi/2 in the (e1,e2)-plane fixes e1 ^ e2: e2 ^ (-e1) = e1 ^ e2
    RMat rot = RMat::identity(4);
    rot(0, 0) = 0.0; rot(1, 1) = 0.0;
    rot(0, 1) = -1.0; rot(1, 0) = 1.0;
    CHECK(norm2(tau_apply(rot, e12) - e12) < 1e-14);

    for (int rep = 0; rep < 10; ++rep) {
        const RMat k1 = random_rotation(4, rng), k2 = random_rotation(4, rng);
        const PForm w = random_form(4, 2, rng), xi = random_form(4, 2, rng);
        CHECK(std::abs(inner(tau_apply(k1, w), tau_apply(k1, xi)) - inner(w, xi)) < 1e-10);
        const PForm lhs = tau_apply(k1 * k2, w);
        const PForm rhs = tau_apply(k1, tau_apply(k2, w));
        CHECK(norm2(lhs - rhs) < 1e-10);
    }

    RMat bad = RMat::identity(4);
    bad(0, 0) = 1.5;
    CHECK_THROWS_AS(tau_apply(bad, e12), std::domain_error);
}

TEST_CASE("embeddings and projections between Lambda^q C^{n-1} and Lambda^p C^n") {
    // scalar 1 embeds as e_1 for p = 1, q = 0
    PForm one(3, 0);
    one.c[0] = 1.0;
    const PForm emb = embed(1, one);
    CHECK(emb.c[rank({1}, 4)] == cplx(1.0));

    // first basis vector of C^{n-1} (ambient e_2) embeds as itself for q = p
    const PForm xi = basis_form(3, 1, {1});
    const PForm emb2 = embed(1, xi);
    CHECK(emb2.c[rank({2}, 4)] == cplx(1.0));

    CHECK(project(0, basis_form(4, 1, {1})).c[0] == cplx(1.0));
    CHECK(norm2(project(1, basis_form(4, 1, {1}))) == 0.0);

    Rng rng(29);
    for (int rep = 0; rep < 10; ++rep) {
        const PForm x = random_form(3, 1, rng);
        CHECK(std::abs(norm2(embed(1, x)) - norm2(x)) < 1e-14);
        CHECK(std::abs(norm2(embed(2, x)) - norm2(x)) < 1e-14);
    }

    // (pi_p^q)^* = iota_q^p as matrices
    for (int n : {4, 5})
        for (int p : {1, 2})
            for (int q : {p - 1, p}) {
                if (q > n - 1) continue;
                const RMat io = iota_matrix(n, p, q);
                // adjoint test through random vectors
                Rng r2(7);
                PForm w = random_form(n, p, r2);
                PForm v = random_form(n - 1, q, r2);
                const cplx lhs = hdot(project(q, w).c, v.c);
                const cplx rhs = inner(w, embed(p, v));
                CHECK(std::abs(lhs - rhs) < 1e-13);
            }

    // decomposition and orthogonality of the two components
    for (int rep = 0; rep < 10; ++rep) {
        const PForm w = random_form(4, 1, rng);
        const PForm a = embed(1, project(0, w));
        const PForm b = embed(1, project(1, w));
        CHECK(norm2(a + b - w) < 1e-14);
        CHECK(std::abs(inner(a, b)) < 1e-14);
    }

    CHECK_THROWS_AS(embed(3, basis_form(3, 1, {1})), std::domain_error);
    CHECK_THROWS_AS(project(2, basis_form(4, 1, {1})), std::domain_error);
}

TEST_CASE("M-equivariance of the embedding") {
    Rng rng(31);
    const int n = 4;
    for (int q : {0, 1}) {
        const int p = 1;
        for (int rep = 0; rep < 5; ++rep) {
            const RMat m = random_rotation(n - 1, rng);
            RMat mk = RMat::identity(n);
            for (int i = 0; i < n - 1; ++i)
                for (int j = 0; j < n - 1; ++j) mk(i + 1, j + 1) = m(i, j);
            PForm xi = random_form(n - 1, q, rng);
            const PForm lhs = tau_apply(mk, embed(p, xi));
            PForm sxi(n - 1, q, sigma_apply(m, q, xi.c));
            const PForm rhs = embed(p, sxi);
            CHECK(norm2(lhs - rhs) < 1e-10);
        }
    }
}

TEST_CASE("dimension identities") {
    for (int n : {4, 5, 6})
        for (int p = 1; p < n; ++p)
            CHECK(binomial(n, p) == binomial(n - 1, p - 1) + binomial(n - 1, p));

    // c_{p,q}^2 = C(n,p)/C(n-1,q) = n/(n-p) for q = p and n/p for q = p-1
    for (int n : {4, 5, 6})
        for (int p : {1, 2}) {
            if (!(p < (n - 1) / 2.0)) continue;
            const double r1 = static_cast<double>(binomial(n, p)) / binomial(n - 1, p);
            const double r2 = static_cast<double>(binomial(n, p)) / binomial(n - 1, p - 1);
            CHECK(r1 == doctest::Approx(static_cast<double>(n) / (n - p)).epsilon(1e-14));
            CHECK(r2 == doctest::Approx(static_cast<double>(n) / p).epsilon(1e-14));
        }
}
