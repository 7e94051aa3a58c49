#pragma once

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "constants.hpp"
#include "grid.hpp"
#include "kernel.hpp"
#include "quadrature.hpp"

namespace fraclab {

using Field = Eigen::VectorXd;

inline constexpr int kQuadratureVersion = 1;

struct QuadratureMeta {
    int version = kQuadratureVersion;
    double near_coefficient = 0.0;
    double interpolation_defect = 0.0;
    std::string near_rule;
    std::string tail_rule;
    std::string boundary_rule;
};

struct AssemblyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SolveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dense discretization of the restricted fractional Laplacian.  The matrix A acts on nodal values;
// it is stored as S = V^{1/2} A V^{-1/2} with V the dual-cell volumes, which is symmetric.
// For the interval V = h I and S = A.
class DiscreteOperator {
public:
    FracParams params;
    Domain domain;
    GridSpec grid;
    QuadratureMeta meta;

    DiscreteOperator(FracParams p, Domain d, GridSpec g, Eigen::MatrixXd S, Eigen::VectorXd vol, QuadratureMeta m)
        : params(std::move(p)), domain(d), grid(std::move(g)), meta(std::move(m)), S_(std::move(S)),
          vol_(std::move(vol)), sqrt_vol_(vol_.cwiseSqrt()), cache_(std::make_shared<Cache>()) {}

    int size() const { return static_cast<int>(S_.rows()); }
    const Eigen::MatrixXd& symmetric() const { return S_; }
    const Eigen::VectorXd& volumes() const { return vol_; }
    const Eigen::VectorXd& sqrt_volumes() const { return sqrt_vol_; }
    std::vector<double> distances() const { return grid.distances(domain); }

    Eigen::MatrixXd matrix() const {
        return sqrt_vol_.cwiseInverse().asDiagonal() * S_ * sqrt_vol_.asDiagonal();
    }

    Field apply(const Field& u) const {
        check_size(u);
        Field v = sqrt_vol_.cwiseProduct(u);
        return (S_ * v).cwiseQuotient(sqrt_vol_);
    }

    // sum_i V_i u_i (A v)_i, the discrete pairing <(-Delta)^s v, u>.
    double form(const Field& u, const Field& v) const {
        check_size(u);
        check_size(v);
        return sqrt_vol_.cwiseProduct(u).dot(S_ * sqrt_vol_.cwiseProduct(v));
    }

    double integrate(const Field& u) const {
        check_size(u);
        return vol_.dot(u);
    }

    const Eigen::LLT<Eigen::MatrixXd>& factor() const {
        std::call_once(cache_->once, [&] {
            cache_->llt.compute(S_);
            if (cache_->llt.info() != Eigen::Success) {
                cache_->failed = true;
                return;
            }
            cache_->rcond = cache_->llt.rcond();
        });
        if (cache_->failed) throw SolveError("Cholesky factorization failed: operator not positive definite");
        if (cache_->rcond < 1e-15)
            throw SolveError("operator ill-conditioned, reciprocal condition estimate " + std::to_string(cache_->rcond));
        return cache_->llt;
    }

    double rcond() const {
        factor();
        return cache_->rcond;
    }

    Field solve(const Field& f) const {
        check_size(f);
        Field w = factor().solve(sqrt_vol_.cwiseProduct(f));
        return w.cwiseQuotient(sqrt_vol_);
    }

    void check_size(const Field& u) const {
        if (u.size() != S_.rows())
            throw std::invalid_argument("field length " + std::to_string(u.size()) + " does not match operator size " +
                                        std::to_string(S_.rows()));
    }

private:
    struct Cache {
        std::once_flag once;
        Eigen::LLT<Eigen::MatrixXd> llt;
        double rcond = 0.0;
        bool failed = false;
    };
    Eigen::MatrixXd S_;
    Eigen::VectorXd vol_;
    Eigen::VectorXd sqrt_vol_;
    std::shared_ptr<Cache> cache_;
};

namespace detail {

inline Eigen::VectorXd to_eigen(const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

template <class F>
void parallel_rows(int n, F&& body) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const int workers = static_cast<int>(std::min<unsigned>(hw, static_cast<unsigned>(std::max(1, n / 32))));
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t)
        pool.emplace_back([&, t] {
            for (int i = t; i < n; i += workers) body(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace detail

inline DiscreteOperator assemble_interval(const FracParams& params, const Domain& domain, const GridSpec& grid) {
    params.validate();
    if (params.N != 1) throw DomainError("interval assembly requires N = 1");
    if (domain.kind != DomainKind::Interval) throw DomainError("interval assembly requires an interval domain");
    if (grid.n < 8) throw DomainError("n >= 8 required for interval assembly");
    const int n = grid.n;
    const double s = params.s, h = grid.h;
    const double scale = kernel_constant(1, s) * std::pow(h, -2.0 * s);
    const double E = kernel::interpolation_defect(s);
    const double c = 1.0 / (2.0 - 2.0 * s) - E;
    const auto w = kernel::hat_weights(n, s);

    Eigen::MatrixXd A(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const int k = std::abs(i - j);
            if (k == 0)
                A(i, j) = scale * (2.0 * c + 1.0 / s);
            else
                A(i, j) = -scale * (w[k] + (k == 1 ? c : 0.0));
        }
    for (int i = 2; i < n; ++i) {
        const double delta = scale * kernel::enrichment(i + 1, s);
        A(i, 0) -= delta;
        A(0, i) -= delta;
        A(n - 1 - i, n - 1) -= delta;
        A(n - 1, n - 1 - i) -= delta;
    }
    QuadratureMeta meta;
    meta.near_coefficient = c;
    meta.interpolation_defect = E;
    meta.near_rule = "second difference on |x-y|<=h, coefficient 1/(2-2s) - E(s)";
    meta.tail_rule = "closed form: exterior integral |z|^{-1-2s} beyond the boundary";
    meta.boundary_rule = "boundary half-hat (d/h)^s";
    Eigen::VectorXd vol = Eigen::VectorXd::Constant(n, h);
    return DiscreteOperator(params, domain, grid, std::move(A), std::move(vol), std::move(meta));
}

inline DiscreteOperator assemble_radial(const FracParams& params, const Domain& domain, const GridSpec& grid) {
    params.validate();
    if (domain.kind != DomainKind::RadialBall) throw DomainError("radial assembly requires a radial ball");
    if (params.N != domain.N) throw DomainError("params.N must equal the ball dimension");
    if (params.N < 2) throw DomainError("radial assembly requires N >= 2");
    if (!(params.N > 2.0 * params.s)) throw DomainError("N > 2s violated");
    if (grid.n < 8) throw DomainError("n >= 8 required for radial assembly");
    using boost::math::quadrature::gauss_kronrod;
    using boost::math::quadrature::tanh_sinh;

    const int n = grid.n, N = params.N, m = N - 1;
    const double s = params.s, h = grid.h, R = domain.R;
    const auto& r = grid.nodes;
    const double C1 = kernel_constant(1, s);
    const double E = kernel::interpolation_defect(s);
    const double c = 1.0 / (2.0 - 2.0 * s) - E;
    const auto w = kernel::hat_weights(n, s);
    std::vector<double> gamma(n + 1, 0.0);
    for (int k = 1; k <= n; ++k) gamma[k] = w[k] * std::pow(static_cast<double>(k), 1.0 + 2.0 * s);

    auto k_of = [&](double a, double b) { return kernel::radial_kernel(a, b, N, s); };

    Eigen::MatrixXd W = Eigen::MatrixXd::Zero(n, n);
    std::vector<double> K(n, 0.0), enrich(n, 0.0);
    const double rn = r[n - 1];
    bool bad = false;
    std::mutex bad_mutex;
    std::string bad_msg;

    detail::parallel_rows(n, [&](int i) {
        const double ri = r[i];
        const double rim = std::pow(ri, m);
        for (int j = i + 1; j < n; ++j) {
            const double kap = rim * std::pow(r[j], m) * k_of(ri, r[j]);
            W(i, j) = h * kap * gamma[j - i];
        }
        // exterior tail, rho = r_i + (R - r_i) e^eta
        auto tail_f = [&](double eta) {
            const double rho = ri + (R - ri) * std::exp(eta);
            return k_of(ri, rho) * std::pow(rho, m) * (R - ri) * std::exp(eta);
        };
        double err = 0.0;
        // the integrand decays like e^{-2 s eta}; the cut leaves a remainder below 1e-17 relative
        const double eta_max = 40.0 / (2.0 * s) + 5.0;
        const double tail = gauss_kronrod<double, 61>::integrate(tail_f, 0.0, eta_max, 25, 1e-12, &err);
        double ki = rim * tail;
        if (i <= n - 2) {
            tanh_sinh<double> ts;
            // t = R - rho over the boundary cell [r_n, R]
            auto g = [&](double t) { return k_of(ri, R - t) * std::pow(R - t, m); };
            const double ramp = ts.integrate([&](double t) { return (1.0 - std::pow(t / h, s)) * g(t); }, 0.0, h);
            ki += rim * ramp;
            if (i <= n - 3)
                enrich[i] = rim * ts.integrate([&](double t) { return (std::pow(t / h, s) - t / h) * g(t); }, 0.0, h);
        }
        K[i] = ki;
        if (!std::isfinite(ki) || !std::isfinite(tail) || err > 1e-8 * std::fabs(tail)) {
            std::lock_guard<std::mutex> lock(bad_mutex);
            bad = true;
            bad_msg = "row " + std::to_string(i) + ": tail=" + std::to_string(tail) + " err=" + std::to_string(err);
        }
    });
    if (bad) throw AssemblyError("radial quadrature did not converge: " + bad_msg);

    const double near = C1 * std::pow(h, -2.0 * s) * c;
    for (int i = 0; i + 1 < n; ++i) W(i, i + 1) += near * std::pow(0.5 * (r[i] + r[i + 1]), m);
    K[n - 1] += near * std::pow(0.5 * (rn + R), m);
    for (int i = 0; i <= n - 3; ++i) W(i, n - 1) += enrich[i];
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) W(j, i) = W(i, j);

    // L = diag(W 1 + K) - W acts on r^{N-1} A; symmetrize with (r_i r_j)^{-(N-1)/2}
    Eigen::VectorXd rowsum = W.rowwise().sum();
    Eigen::VectorXd scale(n);
    for (int i = 0; i < n; ++i) scale[i] = std::pow(r[i], -0.5 * m);
    Eigen::MatrixXd S = -W;
    for (int i = 0; i < n; ++i) S(i, i) = rowsum[i] + K[i];
    S = scale.asDiagonal() * S * scale.asDiagonal();

    QuadratureMeta meta;
    meta.near_coefficient = c;
    meta.interpolation_defect = E;
    meta.near_rule = "flux-form second difference on |r-rho|<=h, coefficient 1/(2-2s) - E(s)";
    meta.tail_rule = "adaptive Gauss-Kronrod over rho > R on a logarithmic scale";
    meta.boundary_rule = "boundary half-hat (d/h)^s";
    return DiscreteOperator(params, domain, grid, std::move(S), detail::to_eigen(volume_weights(domain, grid)),
                            std::move(meta));
}

inline DiscreteOperator assemble(const FracParams& params, const Domain& domain, int n) {
    const auto grid = make_grid(domain, n);
    return domain.kind == DomainKind::Interval ? assemble_interval(params, domain, grid)
                                               : assemble_radial(params, domain, grid);
}

// Standard three-point Laplacian with zero Dirichlet data on the interval (the local s = 1 case).
inline DiscreteOperator assemble_local(const Domain& domain, const GridSpec& grid) {
    if (domain.kind != DomainKind::Interval) throw DomainError("local operator is provided on the interval only");
    const int n = grid.n;
    const double h2 = grid.h * grid.h;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        A(i, i) = 2.0 / h2;
        if (i > 0) A(i, i - 1) = -1.0 / h2;
        if (i + 1 < n) A(i, i + 1) = -1.0 / h2;
    }
    FracParams p;
    p.N = 1;
    p.s = 1.0;
    QuadratureMeta meta;
    meta.near_rule = "three-point second difference";
    meta.tail_rule = "none (local)";
    meta.boundary_rule = "homogeneous Dirichlet";
    return DiscreteOperator(p, domain, grid, std::move(A), Eigen::VectorXd::Constant(n, grid.h), std::move(meta));
}

inline Field apply(const DiscreteOperator& op, const Field& u) { return op.apply(u); }

inline double seminorm_sq(const DiscreteOperator& op, const Field& u) { return op.form(u, u); }

inline double lp_norm(const DiscreteOperator& op, const Field& u, double p) {
    op.check_size(u);
    return std::pow(op.volumes().dot(u.cwiseAbs().array().pow(p).matrix()), 1.0 / p);
}

inline double sobolev_quotient(const DiscreteOperator& op, const Field& u) {
    op.params.require_sobolev();
    if (u.cwiseAbs().maxCoeff() == 0.0) throw std::invalid_argument("sobolev_quotient: zero field");
    const double p = critical_exponent(op.params.N, op.params.s);
    const double nrm = lp_norm(op, u, p);
    return seminorm_sq(op, u) / (nrm * nrm);
}

enum class HardyWeight { Boundary, Potential };

inline Eigen::VectorXd hardy_weights(const DiscreteOperator& op, HardyWeight kind) {
    const double p = 2.0 * op.params.s;
    const auto spec = kind == HardyWeight::Boundary ? WeightSpec::boundary(p) : WeightSpec::origin(p);
    auto w = detail::to_eigen(cell_weights(op.domain, op.grid, spec));
    if (!w.allFinite()) throw std::domain_error("non-finite weight integral on this grid");
    return w;
}

inline double hardy_quotient(const DiscreteOperator& op, const Field& u, HardyWeight kind) {
    if (u.cwiseAbs().maxCoeff() == 0.0) throw std::invalid_argument("hardy_quotient: zero field");
    const auto w = hardy_weights(op, kind);
    const double den = w.dot(u.cwiseProduct(u));
    if (!std::isfinite(den)) throw std::domain_error("non-finite weight integral");
    return seminorm_sq(op, u) / den;
}

}  // namespace fraclab
