#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

namespace fraclab {

struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct FracParams {
    int N = 1;
    double s = 0.5;
    std::optional<double> q;
    std::optional<double> sigma;
    std::optional<double> alpha;
    std::optional<double> beta;

    void validate() const {
        if (!(s > 0.0 && s < 1.0)) throw DomainError("s in (0,1) violated: s = " + std::to_string(s));
        if (N < 1) throw DomainError("N >= 1 violated: N = " + std::to_string(N));
        if (sigma && !(*sigma >= 0.0)) throw DomainError("sigma >= 0 violated");
        if (alpha && !(*alpha >= 0.0)) throw DomainError("alpha >= 0 violated");
    }
    void require_sobolev() const {
        validate();
        if (!(N > 2.0 * s)) throw DomainError("N > 2s violated");
    }
};

struct FracConstants {
    double a_Ns;        // normalization 2^{2s-1} pi^{-N/2} Gamma((N+2s)/2) / |Gamma(-s)|
    double c_Ns;        // kernel constant of the operator, 2 a_Ns (Fourier symbol |xi|^{2s})
    double K_Ns;
    double Lambda_Ns;   // NaN when N <= 2s
    double two_star_s;  // NaN when N <= 2s
};

inline double a_constant(int N, double s) {
    using std::numbers::pi;
    return std::pow(2.0, 2.0 * s - 1.0) * std::pow(pi, -0.5 * N) * std::tgamma(0.5 * (N + 2.0 * s)) /
           std::fabs(std::tgamma(-s));
}

inline double kernel_constant(int N, double s) { return 2.0 * a_constant(N, s); }

inline double critical_exponent(int N, double s) { return 2.0 * N / (N - 2.0 * s); }

inline FracConstants constants(const FracParams& p) {
    p.validate();
    using std::numbers::pi;
    FracConstants c{};
    c.a_Ns = a_constant(p.N, p.s);
    c.c_Ns = 2.0 * c.a_Ns;
    const double g = std::tgamma(p.s + 0.5);
    c.K_Ns = g * g / pi;
    if (p.N > 2.0 * p.s) {
        const double num = std::tgamma(0.25 * (p.N + 2.0 * p.s));
        const double den = std::tgamma(0.25 * (p.N - 2.0 * p.s));
        c.Lambda_Ns = std::pow(2.0, 2.0 * p.s) * num * num / (den * den);
        c.two_star_s = critical_exponent(p.N, p.s);
    } else {
        c.Lambda_Ns = std::nan("");
        c.two_star_s = std::nan("");
    }
    return c;
}

// Constant value of (-Delta)^s (R^2 - |x|^2)_+^s inside the ball of radius R.
inline double getoor_constant(int N, double s) {
    return std::pow(2.0, 2.0 * s) * std::tgamma(1.0 + s) * std::tgamma(0.5 * N + s) / std::tgamma(0.5 * N);
}

inline double sphere_area(int dim) {  // |S^{dim}|, surface of the unit sphere in R^{dim+1}
    using std::numbers::pi;
    const double m = 0.5 * (dim + 1);
    return 2.0 * std::pow(pi, m) / std::tgamma(m);
}

}  // namespace fraclab
