#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "constants.hpp"

namespace fraclab::oracle {

// Direct quadrature of (-Delta)^s applied to u = (R^2 - |x|^2)_+^s, written as the second-difference
// integral (C_{N,s}/2) int (2u(x) - u(x+y) - u(x-y)) |y|^{-N-2s} dy.

namespace detail {

inline double profile(double r2, double R, double s) {
    const double t = R * R - r2;
    return t > 0.0 ? std::pow(t, s) : 0.0;
}

// Laplacian of (R^2 - r^2)^s in N dimensions at radius r
inline double profile_laplacian(double r, int N, double R, double s) {
    const double t = R * R - r * r;
    const double up = -2.0 * s * r * std::pow(t, s - 1.0);
    const double upp = -2.0 * s * std::pow(t, s - 1.0) + 4.0 * s * (s - 1.0) * r * r * std::pow(t, s - 2.0);
    return upp + (r > 0.0 ? (N - 1) * up / r : (N - 1) * (-2.0 * s * std::pow(t, s - 1.0)));
}

}  // namespace detail

// Interval, any x in (-R, R).
inline double getoor_direct_1d(double x, double s, double R = 1.0) {
    using boost::math::quadrature::gauss_kronrod;
    using boost::math::quadrature::tanh_sinh;
    const double C = kernel_constant(1, s);
    auto u = [&](double y) { return detail::profile(y * y, R, s); };
    const double ux = u(x);
    const double z1 = R - std::fabs(x), z2 = R + std::fabs(x);
    const double delta = 1e-4 * z1;
    auto f = [&](double z) { return (2.0 * ux - u(x + z) - u(x - z)) * std::pow(z, -1.0 - 2.0 * s); };
    // near z = 0 the second difference is -u''(x) z^2
    const double upp = detail::profile_laplacian(x, 1, R, s);
    double total = -upp * std::pow(delta, 2.0 - 2.0 * s) / (2.0 - 2.0 * s);
    tanh_sinh<double> ts;
    total += ts.integrate(f, delta, z1, 1e-13);
    if (z2 > z1) total += ts.integrate(f, z1, z2, 1e-13);
    total += 2.0 * ux * std::pow(z2, -2.0 * s) / (2.0 * s);
    return C * total;
}

// Ball in R^N at its center.
inline double getoor_direct_center(int N, double s, double R = 1.0) {
    using boost::math::quadrature::tanh_sinh;
    const double C = kernel_constant(N, s);
    const double area = sphere_area(N - 1);
    tanh_sinh<double> ts;
    const double Rs = std::pow(R, 2.0 * s);
    // (R^2)^s - (R^2 - t^2)^s = R^{2s} (1 - (1 - (t/R)^2)^s), evaluated without cancellation
    auto f = [&](double t) {
        const double w = std::min(t / R, 1.0);
        return -Rs * std::expm1(s * std::log1p(-w * w)) * std::pow(t, -1.0 - 2.0 * s);
    };
    const double delta = 1e-6 * R;
    double inner = Rs * s * std::pow(delta, 2.0 - 2.0 * s) / ((2.0 - 2.0 * s) * R * R);
    inner += ts.integrate(f, delta, R, 1e-13);
    inner += Rs * std::pow(R, -2.0 * s) / (2.0 * s);
    return C * area * inner;
}

// Ball in R^3 at radius 0 < r < R.  The shell kernel int_{S^2} |x - rho w|^{-3-2s} dw has the closed form
// 2 pi (|r-rho|^{-1-2s} - (r+rho)^{-1-2s}) / ((1+2s) r rho); the principal value pairs rho = r +- t.
inline double getoor_direct_radial3(double r, double s, double R = 1.0) {
    using boost::math::quadrature::gauss_kronrod;
    using boost::math::quadrature::tanh_sinh;
    const double C = kernel_constant(3, s);
    const double e = -1.0 - 2.0 * s;
    auto K = [&](double rho) {
        const double diff = std::fabs(r - rho);
        const double gap = -std::pow(diff, e) * std::expm1(e * std::log1p(2.0 * std::min(r, rho) / diff));
        return C * 2.0 * std::numbers::pi * gap / ((1.0 + 2.0 * s) * r) * rho;
    };
    auto u = [&](double rho) { return detail::profile(rho * rho, R, s); };
    const double ur = u(r);
    auto pair = [&](double t) { return (ur - u(r + t)) * K(r + t) + (ur - u(r - t)) * K(r - t); };
    tanh_sinh<double> ts;
    const double delta = 1e-7 * std::min(r, R - r);
    // pair(t) behaves like c t^{1-2s} near 0
    double total = pair(delta) * delta / (2.0 - 2.0 * s);
    const double kink = R - r;
    if (kink < r) {
        total += ts.integrate(pair, delta, kink, 1e-12);
        total += ts.integrate(pair, kink, r, 1e-12);
    } else {
        total += ts.integrate(pair, delta, r, 1e-12);
    }
    auto far = [&](double rho) { return (ur - u(rho)) * K(rho); };
    if (2.0 * r < R) total += ts.integrate(far, 2.0 * r, R, 1e-12);
    const double a = std::max(2.0 * r, R);
    auto tail = [&](double eta) {
        const double rho = a * std::exp(eta);
        return ur * K(rho) * rho;
    };
    total += gauss_kronrod<double, 61>::integrate(tail, 0.0, 40.0 / (2.0 * s) + 5.0, 25, 1e-12);
    return total;
}

}  // namespace fraclab::oracle
