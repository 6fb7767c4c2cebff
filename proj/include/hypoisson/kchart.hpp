#pragma once

// Stereographic realization of K/M integrals: for right-M-invariant F,
//
//   int_K F(k) dk = (1/Z) int_{R^{n-1}} F(kappa(nbar(y))) (1+|y|^2)^{-2 rho} dy,
//
// with Z the Nbar-measure normalizer.  The chart is evaluated in polar
// coordinates with dyadic radial panels starting at a caller-chosen scale, so
// kernels concentrated at |y| ~ e^{-t} (Poisson kernels along k a_t) are
// resolved at any t, while the far region carrying the dk mass is still
// covered up to a fixed outer radius.

#include <vector>

#include "hypoisson/core.hpp"
#include "hypoisson/lorentz.hpp"
#include "hypoisson/sphquad.hpp"

namespace hypoisson {

struct StereoNode {
    RVec y;        // chart point in R^{n-1}
    RMat kappa;    // kappa(nbar(y)) in SO(n)
    double w = 0;  // full dk weight: radial x angular x density / Z
};

struct StereoChart {
    int n = 0;
    std::vector<StereoNode> nodes;
};

/// Build a chart adapted to kernel scale `scale` (use e^{-t}; 1.0 for no
/// concentration).  outer_radius bounds the chart; the dk mass beyond it is
/// O(outer_radius^{-(n-1)}).
inline StereoChart build_stereo_chart(int n, double scale, int radial_pts = 10,
                                      int angular_level = 8, double outer_radius = 1024.0) {
    StereoChart chart;
    chart.n = n;
    const double z = nbar_normalizer(n);
    const double area = sphere_area(n - 1);

    // dyadic radial panel boundaries: scale * {0, 1/2, 1, 2, 4, ...} capped
    RVec bounds{0.0, 0.5 * scale, scale};
    while (bounds.back() < outer_radius) bounds.push_back(std::min(2.0 * bounds.back(), outer_radius));

    RVec gx, gw;
    detail::gauss_legendre(radial_pts, gx, gw);

    // angular nodes on S^{n-2}
    std::vector<RVec> omega;
    RVec omega_w;
    if (n == 2) {
        omega = {{1.0}, {-1.0}};
        omega_w = {0.5, 0.5};
    } else {
        const SphereQuadrature ang = build_sphere_quadrature(n - 1, angular_level);
        omega = ang.nodes;
        omega_w = ang.weights;
    }

    for (std::size_t pa = 0; pa + 1 < bounds.size(); ++pa) {
        const double lo = bounds[pa], hi = bounds[pa + 1];
        for (int i = 0; i < radial_pts; ++i) {
            const double s = 0.5 * (hi - lo) * gx[i] + 0.5 * (hi + lo);
            const double wr = 0.5 * (hi - lo) * gw[i];
            const double density = area * std::pow(s, n - 2) *
                                   std::pow(1.0 + s * s, -(n - 1.0)) / z;
            for (std::size_t a = 0; a < omega.size(); ++a) {
                StereoNode node;
                node.y.resize(n - 1);
                for (int d = 0; d < n - 1; ++d) node.y[d] = s * omega[a][d];
                node.kappa = iwasawa(nbar_of(n, node.y), false).k;
                node.w = wr * density * omega_w[a];
                chart.nodes.push_back(std::move(node));
            }
        }
    }
    return chart;
}

/// sum_i w_i F(node_i) over the chart, pairwise-reduced.
template <class F>
auto integrate_stereo(const StereoChart& chart, F&& f) {
    using T = decltype(f(chart.nodes[0]));
    auto vals =
        parallel_map<T>(chart.nodes.size(), [&](std::size_t i) { return f(chart.nodes[i]); });
    return pairwise_sum<T>(0, vals.size(), [&](std::size_t i) {
        return scale_value(chart.nodes[i].w, vals[i]);
    });
}

}  // namespace hypoisson
