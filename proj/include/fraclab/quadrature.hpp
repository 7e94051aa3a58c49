#pragma once

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <functional>
#include <vector>

#include "grid.hpp"

namespace fraclab {

// Singular weight (dist + eps)^{-p}, measured from the boundary or from the origin.
struct WeightSpec {
    enum class Center { Boundary, Origin };
    Center center = Center::Boundary;
    double p = 0.0;
    double eps = 0.0;

    static WeightSpec boundary(double p, double eps = 0.0) { return {Center::Boundary, p, eps}; }
    static WeightSpec origin(double p) { return {Center::Origin, p, 0.0}; }
};

namespace detail {

// integral of t^{-p} over [lo, hi], 0 <= lo < hi
inline double power_integral(double lo, double hi, double p) {
    if (std::fabs(p - 1.0) < 1e-14) return std::log(hi / lo);
    const double e = 1.0 - p;
    if (lo == 0.0) return std::pow(hi, e) / e;
    // hi^e - lo^e computed as lo^e * expm1(e log(hi/lo)) to keep thin cells accurate
    return std::pow(lo, e) * std::expm1(e * std::log(hi / lo)) / e;
}

// integral over [a,b] subset [0,R] of (R - x + eps)^{-p} dx
inline double boundary_piece(double a, double b, double R, double p, double eps) {
    return power_integral(R - b + eps, R - a + eps, p);
}

inline double interval_cell(double a, double b, double R, const WeightSpec& w) {
    auto piece = [&](double lo, double hi) {  // lo, hi >= 0 in |x|
        if (hi <= lo) return 0.0;
        if (w.center == WeightSpec::Center::Boundary) return boundary_piece(lo, hi, R, w.p, w.eps);
        return power_integral(lo, hi, w.p);
    };
    if (a >= 0.0) return piece(a, b);
    if (b <= 0.0) return piece(-b, -a);
    return piece(0.0, -a) + piece(0.0, b);
}

}  // namespace detail

// Integral of the weight over each dual cell [x_i - h/2, x_i + h/2] in the domain's volume measure.
inline std::vector<double> cell_weights(const Domain& dom, const GridSpec& g, const WeightSpec& w) {
    std::vector<double> out(g.n);
    const double half = 0.5 * g.h;
    if (dom.kind == DomainKind::Interval) {
        for (int i = 0; i < g.n; ++i) out[i] = detail::interval_cell(g.nodes[i] - half, g.nodes[i] + half, dom.R, w);
        return out;
    }
    const double area = sphere_area(dom.N - 1);
    const int m = dom.N - 1;
    for (int i = 0; i < g.n; ++i) {
        const double a = g.nodes[i] - half, b = g.nodes[i] + half;
        if (w.center == WeightSpec::Center::Origin) {
            out[i] = area * detail::power_integral(a, b, w.p - m);
        } else {
            auto f = [&](double r) { return std::pow(dom.R - r + w.eps, -w.p) * std::pow(r, m); };
            out[i] = area * boost::math::quadrature::gauss<double, 20>::integrate(f, a, b);
        }
    }
    return out;
}

// Dual-cell average of the weight: cell integral divided by the cell volume.
inline std::vector<double> cell_averages(const Domain& dom, const GridSpec& g, const WeightSpec& w) {
    auto out = cell_weights(dom, g, w);
    const auto vol = volume_weights(dom, g);
    for (int i = 0; i < g.n; ++i) out[i] /= vol[i];
    return out;
}

// Hat-weighted average of a source f(x, d(x)): int f phi_i dmu / int phi_i dmu.
// The half-hat next to the boundary is (d/h)^s; on the ball the innermost node's hat is flat on [0, r_1].
inline std::vector<double> hat_average(const Domain& dom, const GridSpec& g, double s,
                                       const std::function<double(double, double)>& f) {
    using boost::math::quadrature::gauss;
    using boost::math::quadrature::tanh_sinh;
    const int n = g.n;
    const double h = g.h, R = dom.R;
    const int m = dom.kind == DomainKind::Interval ? 0 : dom.N - 1;
    auto meas = [&](double x) { return m == 0 ? 1.0 : std::pow(x, m); };
    // abscissas stay 1e-150 h away from the endpoints so that integrable d^{-beta} sources remain finite
    tanh_sinh<double> ts(15, 1e-150);
    std::vector<double> out(n);

    auto smooth = [&](auto&& phi, double a, double b) {
        auto num = gauss<double, 20>::integrate([&](double x) { return f(x, dom.distance(x)) * phi(x) * meas(x); }, a, b);
        auto den = gauss<double, 20>::integrate([&](double x) { return phi(x) * meas(x); }, a, b);
        return std::pair{num, den};
    };
    auto with_split = [&](auto&& phi, double a, double b) {
        if (dom.kind == DomainKind::Interval && a < 0.0 && b > 0.0) {
            auto [n1, d1] = smooth(phi, a, 0.0);
            auto [n2, d2] = smooth(phi, 0.0, b);
            return std::pair{n1 + n2, d1 + d2};
        }
        return smooth(phi, a, b);
    };
    // boundary half-hat on [xb, xb + h] (or [xb - h, xb]) in the distance variable t in (0, h]
    auto boundary_half = [&](double xb, double dir) {
        auto g1 = [&](double t) {
            const double x = xb + dir * t;
            return f(x, t) * std::pow(t / h, s) * meas(x);
        };
        double num = ts.integrate(g1, 0.0, h);
        double den = gauss<double, 20>::integrate(
            [&](double t) { return std::pow(t / h, s) * meas(xb + dir * t); }, 0.0, h);
        return std::pair{num, den};
    };

    for (int i = 0; i < n; ++i) {
        const double xi = g.nodes[i];
        double num = 0.0, den = 0.0;
        // left half
        if (i == 0) {
            if (dom.kind == DomainKind::Interval) {
                auto [a, b] = boundary_half(-R, +1.0);
                num += a; den += b;
            } else {
                auto [a, b] = smooth([](double) { return 1.0; }, 0.0, xi);
                num += a; den += b;
            }
        } else {
            const double xl = g.nodes[i - 1];
            auto [a, b] = with_split([&](double x) { return (x - xl) / h; }, xl, xi);
            num += a; den += b;
        }
        // right half
        if (i == n - 1) {
            auto [a, b] = boundary_half(R, -1.0);
            num += a; den += b;
        } else {
            const double xr = g.nodes[i + 1];
            auto [a, b] = with_split([&](double x) { return (xr - x) / h; }, xi, xr);
            num += a; den += b;
        }
        out[i] = num / den;
    }
    return out;
}

// Hat average of d^{-beta}; finite for beta < s + 1.
inline std::vector<double> distance_power_load(const Domain& dom, const GridSpec& g, double s, double beta) {
    return hat_average(dom, g, s, [&](double, double d) { return std::pow(d, -beta); });
}

}  // namespace fraclab
