#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "eigen.hpp"
#include "operator.hpp"
#include "quadrature.hpp"

namespace fraclab {

struct EigenPair {
    double lambda1 = 0.0;
    Field phi1;  // positive, unit maximum
    double residual = 0.0;  // ||A phi1 - lambda1 phi1||_inf
    double lambda2 = 0.0;
    int iterations = 0;
};

struct HardyEstimate {
    double constant = 0.0;
    Field minimizer;  // positive, unit maximum
    std::vector<double> refinement_trace;
    std::vector<int> refinement_sizes;
    bool below_half = false;  // s < 1/2, outside the regime where the boundary Hardy inequality holds
    double second_value = 0.0;
    int iterations = 0;
};

inline Field solve_linear(const DiscreteOperator& op, const Field& rhs) {
    op.check_size(rhs);
    const double scale = rhs.cwiseAbs().maxCoeff();
    if (scale == 0.0) return Field::Zero(rhs.size());
    Field u = op.solve(rhs);
    Field r = rhs - op.apply(u);
    for (int pass = 0; pass < 2 && r.cwiseAbs().maxCoeff() > 1e-10 * scale; ++pass) {
        u += op.solve(r);
        r = rhs - op.apply(u);
    }
    if (r.cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw SolveError("solve residual " + std::to_string(r.cwiseAbs().maxCoeff() / scale) +
                         " exceeds tolerance; reciprocal condition estimate " + std::to_string(op.rcond()));
    return u;
}

inline Field torsion(const DiscreteOperator& op) { return solve_linear(op, Field::Ones(op.size())); }

inline Field auxiliary(const DiscreteOperator& op, double beta) {
    const double s = op.params.s;
    if (!(beta > 0.0 && beta < s + 1.0)) throw DomainError("beta in (0, s+1) violated: beta = " + std::to_string(beta));
    const auto load = distance_power_load(op.domain, op.grid, s, beta);
    return solve_linear(op, detail::to_eigen(load));
}

inline EigenPair principal_eigenpair(const DiscreteOperator& op) {
    const auto& S = op.symmetric();
    auto res = lowest_eigenpair(
        op.size(), [&](const Eigen::MatrixXd& X) { return Eigen::MatrixXd(S * X); },
        [&](const Eigen::MatrixXd& X) { return Eigen::MatrixXd(op.factor().solve(X)); });
    EigenPair ep;
    ep.lambda1 = res.lambda1;
    ep.lambda2 = res.lambda2;
    ep.iterations = res.iterations;
    Field phi = res.vector.cwiseQuotient(op.sqrt_volumes());
    if (phi.sum() < 0.0) phi = -phi;
    phi /= phi.maxCoeff();
    ep.phi1 = phi;
    ep.residual = (op.apply(phi) - ep.lambda1 * phi).cwiseAbs().maxCoeff();
    return ep;
}

// Smallest c with A u = c W u, W the dual-cell integrals of d^{-2s}, in the pairing sum V u A u.
inline HardyEstimate hardy_constant(const DiscreteOperator& op, HardyWeight kind = HardyWeight::Boundary) {
    const Eigen::VectorXd w = hardy_weights(op, kind);
    const Eigen::VectorXd dscale = op.sqrt_volumes().cwiseQuotient(w.cwiseSqrt());
    const auto& S = op.symmetric();
    auto res = lowest_eigenpair(
        op.size(),
        [&](const Eigen::MatrixXd& X) { return Eigen::MatrixXd(dscale.asDiagonal() * (S * (dscale.asDiagonal() * X))); },
        [&](const Eigen::MatrixXd& X) {
            Eigen::MatrixXd Y = op.factor().solve(dscale.cwiseInverse().asDiagonal() * X);
            return Eigen::MatrixXd(dscale.cwiseInverse().asDiagonal() * Y);
        });
    HardyEstimate est;
    est.constant = res.lambda1;
    est.second_value = res.lambda2;
    est.iterations = res.iterations;
    Field u = res.vector.cwiseQuotient(w.cwiseSqrt());
    if (u.sum() < 0.0) u = -u;
    est.minimizer = u / u.maxCoeff();
    est.below_half = op.params.s < 0.5;
    return est;
}

inline constexpr int kBatteryVersion = 1;

// Fixed test-function battery: a global bump, three compact bumps, the torsion function and phi_1,
// each scaled to unit maximum.
inline std::vector<Field> test_battery(const DiscreteOperator& op) {
    const int n = op.size();
    const double R = op.domain.R;
    const auto& x = op.grid.nodes;
    std::vector<Field> out;
    Field g(n);
    for (int i = 0; i < n; ++i) {
        const double t = 1.0 - (x[i] / R) * (x[i] / R);
        g[i] = t * t;
    }
    out.push_back(g);
    const bool interval = op.domain.kind == DomainKind::Interval;
    const double centers_i[3] = {-0.5, 0.0, 0.5};
    const double centers_r[3] = {0.25, 0.5, 0.75};
    for (int k = 0; k < 3; ++k) {
        const double c = (interval ? centers_i[k] : centers_r[k]) * R;
        const double width = 0.25 * R;
        Field b(n);
        for (int i = 0; i < n; ++i) {
            const double z = (x[i] - c) / width;
            b[i] = std::fabs(z) < 1.0 ? (1.0 - z * z) * (1.0 - z * z) : 0.0;
        }
        if (b.maxCoeff() > 0.0) b /= b.maxCoeff();
        out.push_back(b);
    }
    Field rho = torsion(op);
    out.push_back(rho / rho.maxCoeff());
    out.push_back(principal_eigenpair(op).phi1);
    return out;
}

// max over the battery of |<u, A psi> - int rhs psi| / ||psi||_inf.
inline double weak_residual(const DiscreteOperator& op, const Field& u, const Field& rhs,
                            const std::vector<Field>& battery) {
    op.check_size(u);
    op.check_size(rhs);
    double worst = 0.0;
    for (const auto& psi : battery) {
        const double lhs = op.form(u, psi);
        const double rhs_pair = op.volumes().dot(rhs.cwiseProduct(psi));
        worst = std::max(worst, std::fabs(lhs - rhs_pair) / psi.cwiseAbs().maxCoeff());
    }
    return worst;
}

inline double weak_residual(const DiscreteOperator& op, const Field& u, const Field& rhs) {
    return weak_residual(op, u, rhs, test_battery(op));
}

}  // namespace fraclab
