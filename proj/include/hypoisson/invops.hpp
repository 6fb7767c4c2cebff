#pragma once

// Invariant differential operators on tau_p-covariant fields by central
// finite differences along one-parameter subgroups, with one Richardson
// extrapolation level: D = sum_j X_j eps_{X_j}, D* = -sum_j X_j iota_{X_j},
// and the Casimir C = sum_j X_j^2 - sum_j Y_j^2.  The Lie directions are
// interpreted through p ~ R^n, X_j -> e_j.

#include <functional>
#include <vector>

#include "hypoisson/exterior.hpp"
#include "hypoisson/lorentz.hpp"

namespace hypoisson {

using FieldFn = std::function<PForm(const GroupElement&)>;

struct LieBasis {
    std::vector<RMat> p_basis;  // X_j = E_{j,n+1} + E_{n+1,j}, j = 1..n
    std::vector<RMat> k_basis;  // Y_{ij} = E_{ij} - E_{ji}, 1 <= i < j <= n
};

inline LieBasis lie_basis(int n) {
    LieBasis b;
    for (int j = 0; j < n; ++j) {
        RMat x(n + 1, n + 1);
        x(j, n) = 1.0;
        x(n, j) = 1.0;
        b.p_basis.push_back(std::move(x));
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            RMat y(n + 1, n + 1);
            y(i, j) = 1.0;
            y(j, i) = -1.0;
            b.k_basis.push_back(std::move(y));
        }
    return b;
}

/// Matrix exponential by scaling-and-squaring Taylor; matrices here are
/// (n+1)x(n+1) with small norm after scaling.
inline RMat expm(const RMat& x) {
    double scale = max_abs(x);
    int squarings = 0;
    while (scale > 0.25) {
        scale /= 2.0;
        ++squarings;
    }
    const double f = std::pow(0.5, squarings);
    RMat xs = x * f;
    RMat term = RMat::identity(x.rows());
    RMat sum = term;
    for (int k = 1; k <= 16; ++k) {
        term = term * xs * (1.0 / k);
        sum += term;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum;
}

/// Right-invariant directional derivative (X f)(g) = d/ds f(g exp(sX))|_0,
/// central differences with one Richardson step (h, h/2).
inline PForm directional_derivative(const FieldFn& field, const GroupElement& g, const RMat& x,
                                    int order, double h) {
    if (h <= 0.0) throw std::domain_error("directional_derivative: h > 0 required");
    if (order != 1 && order != 2) throw std::domain_error("directional_derivative: order 1 or 2");
    auto at = [&](double s) { return field(GroupElement{g.m * expm(x * s)}); };
    if (order == 1) {
        auto diff = [&](double hh) {
            PForm a = at(hh);
            const PForm b = at(-hh);
            for (std::size_t i = 0; i < a.c.size(); ++i) a.c[i] = (a.c[i] - b.c[i]) / (2.0 * hh);
            return a;
        };
        const PForm d1 = diff(h), d2 = diff(h / 2.0);
        PForm r(d1.n, d1.p);
        for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = (4.0 * d2.c[i] - d1.c[i]) / 3.0;
        return r;
    }
    const PForm f0 = field(g);
    auto diff2 = [&](double hh) {
        PForm a = at(hh);
        const PForm b = at(-hh);
        for (std::size_t i = 0; i < a.c.size(); ++i)
            a.c[i] = (a.c[i] - 2.0 * f0.c[i] + b.c[i]) / (hh * hh);
        return a;
    };
    const PForm d1 = diff2(h), d2 = diff2(h / 2.0);
    PForm r(d1.n, d1.p);
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = (4.0 * d2.c[i] - d1.c[i]) / 3.0;
    return r;
}

inline constexpr double fd_step_first = 1e-3;
inline constexpr double fd_step_second = 5e-3;

/// D field (g): degree p -> p+1.
inline PForm apply_D(const FieldFn& field, const GroupElement& g, double h = fd_step_first) {
    const int n = g.n();
    const LieBasis basis = lie_basis(n);
    PForm result;
    for (int j = 0; j < n; ++j) {
        const PForm dj = directional_derivative(field, g, basis.p_basis[j], 1, h);
        const PForm term = exterior_mul(unit_vector(n, j + 1), dj);
        if (j == 0) result = term;
        else result += term;
    }
    return result;
}

/// D* field (g): degree p -> p-1.
inline PForm apply_Dstar(const FieldFn& field, const GroupElement& g, double h = fd_step_first) {
    const int n = g.n();
    const LieBasis basis = lie_basis(n);
    PForm result;
    for (int j = 0; j < n; ++j) {
        const PForm dj = directional_derivative(field, g, basis.p_basis[j], 1, h);
        PForm term = interior(unit_vector(n, j + 1), dj);
        for (auto& c : term.c) c = -c;
        if (j == 0) result = term;
        else result += term;
    }
    return result;
}

/// Casimir C field (g) = sum_j X_j^2 field - sum Y^2 field.
inline PForm apply_casimir(const FieldFn& field, const GroupElement& g,
                           double h = fd_step_second) {
    const int n = g.n();
    const LieBasis basis = lie_basis(n);
    PForm result;
    bool first = true;
    for (const RMat& x : basis.p_basis) {
        const PForm d = directional_derivative(field, g, x, 2, h);
        if (first) { result = d; first = false; }
        else result += d;
    }
    for (const RMat& y : basis.k_basis) {
        PForm d = directional_derivative(field, g, y, 2, h);
        for (auto& c : d.c) c = -c;
        result += d;
    }
    return result;
}

/// (D D* field (g), D* D field (g)) with nested first-order differences.
inline std::pair<PForm, PForm> second_order_pair(const FieldFn& field, const GroupElement& g,
                                                 double h = fd_step_first) {
    if (!field(g).p) throw std::domain_error("second_order_pair: requires p >= 1");
    FieldFn dstar_field = [&field, h](const GroupElement& gg) {
        return apply_Dstar(field, gg, h);
    };
    FieldFn d_field = [&field, h](const GroupElement& gg) { return apply_D(field, gg, h); };
    return {apply_D(dstar_field, g, h), apply_Dstar(d_field, g, h)};
}

}  // namespace hypoisson
