#pragma once

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "constants.hpp"

namespace fraclab::kernel {

// Second antiderivative of z^{-1-2s} and its derivative, unit spacing.
inline double G(double z, double s) {
    if (std::fabs(s - 0.5) < 1e-14) return -std::log(z);
    return std::pow(z, 1.0 - 2.0 * s) / ((-2.0 * s) * (1.0 - 2.0 * s));
}
inline double Gp(double z, double s) { return std::pow(z, -2.0 * s) / (-2.0 * s); }

// w_k = int hat(z - k) |z|^{-1-2s} dz, the far-field weight between nodes k cells apart.
// w_1 only covers 1 <= z <= 2; the part |z| < 1 goes to the second-difference rule.
inline double hat_weight(long k, double s) {
    if (k == 1) return -Gp(1.0, s) + G(2.0, s) - G(1.0, s);
    const double z = static_cast<double>(k);
    if (k < 64) return G(z + 1.0, s) - 2.0 * G(z, s) + G(z - 1.0, s);
    const double a = 1.0 + 2.0 * s;
    const double g = std::pow(z, -a);
    return g * (1.0 + a * (a + 1.0) / (12.0 * z * z) + a * (a + 1.0) * (a + 2.0) * (a + 3.0) / (360.0 * z * z * z * z));
}

inline std::vector<double> hat_weights(long kmax, double s) {
    std::vector<double> w(kmax + 1, 0.0);
    for (long k = 1; k <= kmax; ++k) w[k] = hat_weight(k, s);
    return w;
}

// E(s) = sum_{j>=1} int_j^{j+1} (z-j)(j+1-z) z^{-1-2s} dz: the quadratic-interpolation error of the
// piecewise-linear far field, returned to the second-difference coefficient.
inline double interpolation_defect(double s) {
    using boost::math::quadrature::gauss;
    const double a = 1.0 + 2.0 * s;
    double total = 0.0;
    for (int j = 1; j < 64; ++j)
        total += gauss<double, 20>::integrate(
            [&](double t) { return t * (1.0 - t) * std::pow(j + t, -a); }, 0.0, 1.0);
    constexpr long J = 100000;
    for (long j = 64; j < J; ++j) {
        const double m = j + 0.5;
        const double g = std::pow(m, -a);
        total += g / 6.0 + a * (a + 1.0) * g / (m * m) / 240.0;
    }
    total += std::pow(static_cast<double>(J), -2.0 * s) / (12.0 * s);
    return total;
}

// Coefficient of the second difference representing |z| <= 1 (unit spacing).
inline double near_coefficient(double s) { return 1.0 / (2.0 - 2.0 * s) - interpolation_defect(s); }

// int_0^1 (t^s - t) (k - t)^{-1-2s} dt: extra coupling of a row k cells from the boundary node
// produced by the (d/h)^s boundary half-hat.
inline double enrichment(long k, double s) {
    const double a = 1.0 + 2.0 * s;
    const double z = static_cast<double>(k);
    if (k < 16) {
        boost::math::quadrature::tanh_sinh<double> ts;
        return ts.integrate([&](double t) { return (std::pow(t, s) - t) * std::pow(z - t, -a); }, 0.0, 1.0);
    }
    double total = 0.0, coef = 1.0;
    for (int m = 0; m < 60; ++m) {
        const double term = coef * (1.0 / (s + m + 1.0) - 1.0 / (m + 2.0));
        total += term;
        if (std::fabs(term) < 1e-17 * std::fabs(total)) break;
        coef *= (a + m) / ((m + 1.0) * z);
    }
    return total * std::pow(z, -a);
}

// Radial kernel k(r, rho) = C_{N,s} |S^{N-2}| int_0^pi (r^2 + rho^2 - 2 r rho cos t)^{-(N+2s)/2} sin^{N-2} t dt.
inline double angular_integral(double r, double rho, int N, double s) {
    const double mu = 0.5 * (N + 2.0 * s);
    if (N == 3) {
        const double e = -1.0 - 2.0 * s;
        const double diff = std::fabs(r - rho);
        // |r-rho|^e - (r+rho)^e without cancellation when one radius dominates
        const double lr = std::log1p(2.0 * std::min(r, rho) / diff);
        return -std::pow(diff, e) * std::expm1(e * lr) / ((1.0 + 2.0 * s) * r * rho);
    }
    using boost::math::quadrature::gauss_kronrod;
    const double a = r * r + rho * rho, b = 2.0 * r * rho;
    auto plain = [&](double t) { return std::pow(a - b * std::cos(t), -mu) * std::pow(std::sin(t), N - 2); };
    const double diff = std::fabs(r - rho);
    const double eps = diff / (2.0 * std::sqrt(r * rho));
    const double tol = 1e-11;
    if (eps >= 1.0) return gauss_kronrod<double, 31>::integrate(plain, 0.0, std::numbers::pi, 15, tol);
    // sin(t/2) = eps sinh(xi) resolves the near-diagonal peak at t = 0
    const double xmax = std::asinh(std::sin(std::numbers::pi / 4.0) / eps);
    auto sub = [&](double xi) {
        const double sh = eps * std::sinh(xi), ch = std::cosh(xi);
        const double c = std::sqrt(std::max(0.0, 1.0 - sh * sh));
        const double base = std::pow(diff * ch, -2.0 * mu);
        return base * std::pow(2.0 * sh * c, N - 2) * 2.0 * eps * ch / c;
    };
    const double left = gauss_kronrod<double, 31>::integrate(sub, 0.0, xmax, 15, tol);
    const double right = gauss_kronrod<double, 31>::integrate(plain, 0.5 * std::numbers::pi, std::numbers::pi, 15, tol);
    return left + right;
}

inline double radial_kernel(double r, double rho, int N, double s) {
    return kernel_constant(N, s) * sphere_area(N - 2) * angular_integral(r, rho, N, s);
}

}  // namespace fraclab::kernel
