#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "linear.hpp"
#include "quadrature.hpp"
#include "sublinear.hpp"

namespace fraclab {

struct MinimizeOptions {
    double tol = 1e-10;
    int max_iter = 5000;
};

struct ConstrainedMinimum {
    Field v;          // P(v) = sum_i omega_i |v_i|^p = 1
    double Q = 0.0;   // seminorm_sq(v), also the Lagrange multiplier
    double el_residual = 0.0;
    int iterations = 0;
    int backtracks = 0;
};

namespace detail {

inline double constraint(const Field& omega, const Field& v, double p) {
    return omega.dot(v.cwiseAbs().array().pow(p).matrix());
}

inline Field normalize(const Field& omega, const Field& v, double p) {
    return v / std::pow(constraint(omega, v, p), 1.0 / p);
}

// ||A v - Q (omega/V) v^{p-1}||_inf relative to the nonlinear term
inline double el_residual(const DiscreteOperator& op, const Field& v, const Field& dens, double Q, double p) {
    const Field nl = Q * dens.cwiseProduct(v.cwiseAbs().array().pow(p - 1.0).matrix());
    return (op.apply(v) - nl).cwiseAbs().maxCoeff() / nl.cwiseAbs().maxCoeff();
}

}  // namespace detail

// Minimize seminorm_sq(v) subject to sum omega_i |v_i|^p = 1.  The search direction is the
// gradient preconditioned by A^{-1}; its unit step is the normalized fixed-point map
// v -> Q A^{-1}((omega/V) v^{p-1}).  Step lengths start from a Barzilai-Borwein estimate and are
// halved until the quotient does not increase.
inline ConstrainedMinimum minimize_on_constraint(const DiscreteOperator& op, const Field& omega, double p,
                                                 const MinimizeOptions& opt = {}) {
    const int n = op.size();
    const Field dens = omega.cwiseQuotient(op.volumes());
    const double R = op.domain.R, s = op.params.s;
    Field v(n);
    for (int i = 0; i < n; ++i) {
        const double x = op.grid.nodes[i];
        v[i] = std::pow(R * R - x * x, s);
    }
    v = detail::normalize(omega, v, p);
    ConstrainedMinimum out;
    double Q = seminorm_sq(op, v);
    Field prev_v, prev_dir;
    double tau = 1.0;
    for (int it = 1; it <= opt.max_iter; ++it) {
        const Field z = op.solve(dens.cwiseProduct(v.cwiseAbs().array().pow(p - 1.0).matrix()));
        const Field dir = Q * z - v;
        out.el_residual = detail::el_residual(op, v, dens, Q, p);
        out.iterations = it;
        if (out.el_residual <= opt.tol) break;
        if (prev_v.size() == n) {
            const Field sv = op.sqrt_volumes().cwiseProduct(v - prev_v);
            const Field yv = op.sqrt_volumes().cwiseProduct(prev_dir - dir);
            const double sy = sv.dot(yv);
            tau = sy > 0.0 ? std::clamp(sv.squaredNorm() / sy, 0.25, 2.0) : 1.0;
        }
        Field trial;
        double Qt = 0.0;
        for (int bt = 0;; ++bt) {
            trial = detail::normalize(omega, (v + tau * dir).cwiseAbs(), p);
            Qt = seminorm_sq(op, trial);
            if (Qt <= Q * (1.0 + 1e-13) || bt >= 30) break;
            tau *= 0.5;
            ++out.backtracks;
        }
        prev_v = v;
        prev_dir = dir;
        v = std::move(trial);
        Q = Qt;
    }
    if (out.el_residual > opt.tol)
        throw ConvergenceError("constrained minimization did not converge, residual " + std::to_string(out.el_residual));
    out.v = v;
    out.Q = Q;
    return out;
}

struct GroundState {
    Field field;
    double energy = 0.0;
    double mp_level = 0.0;
    double el_residual = 0.0;
    double reg_index = 0.0;
    double multiplier = 0.0;
    double seminorm_sq = 0.0;
    double sup_norm = 0.0;
    double argmax_distance = 0.0;
    int iterations = 0;
    bool outside_regime = false;  // s < 1/2
};

inline double subcritical_upper(const FracParams& p) {
    if (p.N > 2.0 * p.s) return critical_exponent(p.N, p.s) - 1.0;
    return std::numeric_limits<double>::infinity();
}

inline GroundState ground_state(const DiscreteOperator& op, double q, double n_reg, const MinimizeOptions& opt = {}) {
    if (!(q > 1.0 && q < subcritical_upper(op.params))) throw DomainError("1 < q < 2*_s - 1 violated");
    const Field omega =
        detail::to_eigen(cell_weights(op.domain, op.grid, WeightSpec::boundary(2.0 * op.params.s, 1.0 / n_reg)));
    if (!omega.allFinite()) throw std::domain_error("constraint weight integral is not finite");
    auto m = minimize_on_constraint(op, omega, q + 1.0, opt);
    GroundState gs;
    gs.reg_index = n_reg;
    gs.multiplier = m.Q;
    gs.field = std::pow(m.Q, 1.0 / (q - 1.0)) * m.v;
    gs.iterations = m.iterations;
    const Field dens = omega.cwiseQuotient(op.volumes());
    const Field nl = dens.cwiseProduct(gs.field.array().pow(q).matrix());
    gs.el_residual = (op.apply(gs.field) - nl).cwiseAbs().maxCoeff() / nl.cwiseAbs().maxCoeff();
    gs.seminorm_sq = seminorm_sq(op, gs.field);
    gs.energy = 0.5 * gs.seminorm_sq - omega.dot(gs.field.array().pow(q + 1.0).matrix()) / (q + 1.0);
    gs.mp_level = (q - 1.0) / (2.0 * (q + 1.0)) * gs.seminorm_sq;
    Eigen::Index imax = 0;
    gs.sup_norm = gs.field.maxCoeff(&imax);
    gs.argmax_distance = op.domain.distance(op.grid.nodes[imax]);
    gs.outside_regime = op.params.s < 0.5;
    return gs;
}

struct AprioriReport {
    std::vector<double> reg_indices;
    std::vector<double> sup_norms;
    std::vector<double> sup_pow;  // sup^{q-1}
    std::vector<double> argmax_distance;
    std::vector<double> el_residuals;
    std::vector<double> mp_levels;
    double inf_sup = 0.0;
    double hardy = 0.0;
    double last_change = 0.0;  // relative change of the sup-norm between the last two entries
};

inline AprioriReport apriori_sweep(const DiscreteOperator& op, double q, const std::vector<double>& schedule,
                                   const MinimizeOptions& opt = {}) {
    AprioriReport rep;
    rep.hardy = hardy_constant(op).constant;
    for (double n_reg : schedule) {
        auto gs = ground_state(op, q, n_reg, opt);
        rep.reg_indices.push_back(n_reg);
        rep.sup_norms.push_back(gs.sup_norm);
        rep.sup_pow.push_back(std::pow(gs.sup_norm, q - 1.0));
        rep.argmax_distance.push_back(gs.argmax_distance);
        rep.el_residuals.push_back(gs.el_residual);
        rep.mp_levels.push_back(gs.mp_level);
    }
    rep.inf_sup = *std::min_element(rep.sup_norms.begin(), rep.sup_norms.end());
    const auto& v = rep.sup_norms;
    rep.last_change = v.size() >= 2 ? std::fabs(v.back() - v[v.size() - 2]) / v[v.size() - 2] : 0.0;
    return rep;
}

struct CriticalReport {
    double R = 0.0;
    double S_R = 0.0;
    Field minimizer;
    double normalization = 0.0;
    double el_residual = 0.0;
    double concentration_fraction = 0.0;
    double radial_bound_const = 0.0;
    int n = 0;
    int iterations = 0;
};

inline CriticalReport critical_SR(const DiscreteOperator& op, const MinimizeOptions& opt = {}) {
    if (op.domain.kind != DomainKind::RadialBall) throw DomainError("critical_SR requires a radial operator");
    op.params.require_sobolev();
    const int N = op.params.N;
    const double s = op.params.s;
    const double p = critical_exponent(N, s);
    const Field omega = detail::to_eigen(cell_weights(op.domain, op.grid, WeightSpec::boundary(2.0 * s)));
    if (!omega.allFinite()) throw std::domain_error("normalization weight integral is not finite");
    auto m = minimize_on_constraint(op, omega, p, opt);
    CriticalReport rep;
    rep.R = op.domain.R;
    rep.n = op.size();
    rep.S_R = m.Q;
    rep.minimizer = m.v;
    rep.iterations = m.iterations;
    rep.normalization = detail::constraint(omega, m.v, p);
    // the rescaled minimizer u = S^{1/(p-2)} v solves A u = (omega/V) u^{p-1}
    const Field u = std::pow(m.Q, 1.0 / (p - 2.0)) * m.v;
    const Field dens = omega.cwiseQuotient(op.volumes());
    const Field nl = dens.cwiseProduct(u.array().pow(p - 1.0).matrix());
    rep.el_residual = (op.apply(u) - nl).cwiseAbs().maxCoeff() / nl.cwiseAbs().maxCoeff();
    const int inner = std::max(1, static_cast<int>(std::ceil(0.05 * op.size())));
    double part = 0.0;
    for (int i = 0; i < inner; ++i) part += omega[i] * std::pow(std::fabs(m.v[i]), p);
    rep.concentration_fraction = part / rep.normalization;
    double mx = 0.0;
    for (int i = 0; i < op.size(); ++i)
        mx = std::max(mx, std::pow(op.grid.nodes[i], 0.5 * (N - 2.0 * s)) * std::fabs(m.v[i]));
    rep.radial_bound_const = mx / std::sqrt(m.Q);
    return rep;
}

inline double scaling_check(const CriticalReport& r1, const CriticalReport& r2, double s, int N) {
    const double target = std::pow(r2.R / r1.R, 4.0 * s / critical_exponent(N, s));
    return std::fabs(r2.S_R / r1.S_R - target) / target;
}

}  // namespace fraclab
