#include "doctest.h"
#include "hypoisson/invops.hpp"
#include "hypoisson/poisson.hpp"

using namespace hypoisson;

namespace {

double half_trace_product(const RMat& a, const RMat& b) {
    double s = 0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) s += a(i, j) * b(j, i);
    return s / 2.0;
}

}  // namespace

TEST_CASE("basis normalization and bracket relations") {
    const int n = 4;
    const LieBasis b = lie_basis(n);
    REQUIRE(b.p_basis.size() == 4);
    REQUIRE(b.k_basis.size() == 6);

    for (std::size_t i = 0; i < b.p_basis.size(); ++i)
        for (std::size_t j = 0; j < b.p_basis.size(); ++j)
            CHECK(half_trace_product(b.p_basis[i], b.p_basis[j]) == (i == j ? 1.0 : 0.0));
    for (std::size_t i = 0; i < b.k_basis.size(); ++i)
        for (std::size_t j = 0; j < b.k_basis.size(); ++j)
            CHECK(-half_trace_product(b.k_basis[i], b.k_basis[j]) == (i == j ? 1.0 : 0.0));

    // [X_i, X_j] lies in span(k_basis): expand and check zero remainder
    for (std::size_t i = 0; i < b.p_basis.size(); ++i)
        for (std::size_t j = 0; j < b.p_basis.size(); ++j) {
            RMat br = b.p_basis[i] * b.p_basis[j] - b.p_basis[j] * b.p_basis[i];
            for (const RMat& y : b.k_basis) {
                const double coef = -half_trace_product(br, y);
                br = br - y * coef;
            }
            CHECK(max_abs(br) < 1e-14);
        }
}

TEST_CASE("directional derivatives") {
    const int n = 4;
    const LieBasis basis = lie_basis(n);

    // constant field
    FieldFn cf = [n](const GroupElement&) {
        PForm r(n, 0);
        r.c[0] = cplx(2.0, -1.0);
        return r;
    };
    const GroupElement g = geodesic(n, 0.4);
    CHECK(norm2(directional_derivative(cf, g, basis.p_basis[0], 1, 1e-3)) < 1e-10);

    // exponential field along H_0: exact derivative c e^{ct}
    const double c = 0.7;
    FieldFn ef = [n, c](const GroupElement& gg) {
        PForm r(n, 0);
        r.c[0] = std::exp(c * iwasawa(gg, false).t);
        return r;
    };
    const GroupElement at = geodesic(n, 0.9);
    const PForm d1 = directional_derivative(ef, at, basis.p_basis[0], 1, 1e-3);
    CHECK(std::abs(d1.c[0] - c * std::exp(c * 0.9)) < 1e-11);
    const PForm d2 = directional_derivative(ef, at, basis.p_basis[0], 2, 5e-3);
    CHECK(std::abs(d2.c[0] - c * c * std::exp(c * 0.9)) < 1e-9);

    // Richardson keeps at least 8x error reduction when h halves
    auto err_at = [&](double h) {
        const PForm d = directional_derivative(ef, at, basis.p_basis[0], 1, h);
        return std::abs(d.c[0] - c * std::exp(c * 0.9));
    };
    const double e1 = err_at(0.08), e2 = err_at(0.04);
    CHECK(e1 / e2 >= 8.0);

    CHECK_THROWS_AS(directional_derivative(ef, at, basis.p_basis[0], 3, 1e-3),
                    std::domain_error);
    CHECK_THROWS_AS(directional_derivative(ef, at, basis.p_basis[0], 1, 0.0),
                    std::domain_error);
}

TEST_CASE("eigen-equations of the Poisson transforms") {
    Rng rng(7);
    const SphereQuadrature quad = build_sphere_quadrature(4, 8);
    for (int q : {0, 1}) {
        const cplx mu = q == 1 ? cplx(1.5, 0.0) : cplx(1.0, 0.0);
        SpectralParams sp{4, 1, q, mu};
        PForm w(4, 1);
        for (auto& cc : w.c) cc = rng.cgaussian();
        const PoissonField field = make_poisson_field(sp, kfinite_test_form(w, q), quad);
        FieldFn fn = [&field](const GroupElement& g) {
            return field_eval(field, g, EvalMode::ClosedForm);
        };

        const GroupElement g = embed_K(random_rotation(4, rng)) * geodesic(4, 0.8) *
                               embed_K(random_rotation(4, rng));
        const PForm base = fn(g);
        const double bn = norm2(base);

        const double rq = sp.rho() - q;
        const cplx cas_ev = -(-mu * mu + rq * rq);
        const PForm cas = apply_casimir(fn, g);
        CHECK(norm2(cas - cas_ev * base) / (std::abs(cas_ev) * bn) < 1e-4);

        if (q == 1) {
            CHECK(norm2(apply_Dstar(fn, g)) / bn < 5e-6);
            const auto pr = second_order_pair(fn, g);
            const cplx ev = -mu * mu + rq * rq;
            CHECK(norm2(pr.second - ev * base) / (std::abs(ev) * bn) < 1e-3);
            CHECK(norm2(pr.first) / bn < 1e-3);
        } else {
            CHECK(norm2(apply_D(fn, g)) / bn < 5e-6);
            const auto pr = second_order_pair(fn, g);
            const cplx ev = -mu * mu + rq * rq;
            CHECK(norm2(pr.first - ev * base) / (std::abs(ev) * bn) < 1e-3);
        }
    }

    // p = 0 harmonic case: the Casimir annihilates the constant field at mu = rho
    SpectralParams sp0{4, 0, 0, cplx(1.5, 0.0)};
    PForm one(4, 0);
    one.c[0] = 1.0;
    const PoissonField f0 =
        make_poisson_field(sp0, kfinite_test_form(one, 0), build_sphere_quadrature(4, 8));
    FieldFn fn0 = [&f0](const GroupElement& g) { return field_eval(f0, g, EvalMode::ClosedForm); };
    const GroupElement g = geodesic(4, 0.7);
    CHECK(norm2(apply_casimir(fn0, g)) < 1e-9);

    // degree error: D* is undefined on 0-forms
    CHECK_THROWS_AS(apply_Dstar(fn0, g), std::domain_error);
    CHECK_THROWS_AS(second_order_pair(fn0, g), std::domain_error);
}
