#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "linear.hpp"
#include "quadrature.hpp"

namespace fraclab {

struct IterationTrace {
    std::vector<double> reg_indices;
    std::vector<Field> fields;
    std::vector<double> sup_norms;
    std::vector<double> interior_min;
    std::vector<double> weighted_l1;
    std::vector<double> weighted_l1_beta;  // beta used for weighted_l1
    std::vector<double> residuals;
    std::vector<double> floor_scale;  // c_n with c_n phi_1 <= u_n
    std::vector<int> inner_iters;
    Field phi1;
    double lambda1 = 0.0;
    bool inner_monotone = true;
    bool outer_monotone = true;
    bool blow_up = false;
    double blow_up_index = 0.0;
};

struct SublinearOptions {
    double tol = 1e-10;
    double blow_up = 1e6;
    int max_inner = 10000;
    double l1_beta = 0.5;
};

// Cell average of (d + 1/n)^{-p}.
inline Field regularized_weight(const DiscreteOperator& op, double p, double n_reg) {
    return detail::to_eigen(cell_averages(op.domain, op.grid, WeightSpec::boundary(p, 1.0 / n_reg)));
}

// Indices of the middle third: |x| <= R/3 on the interval, R/3 <= r <= 2R/3 on the ball.
inline std::vector<int> middle_third(const DiscreteOperator& op) {
    std::vector<int> idx;
    const double R = op.domain.R;
    for (int i = 0; i < op.size(); ++i) {
        const double x = op.grid.nodes[i];
        const bool in = op.domain.kind == DomainKind::Interval ? std::fabs(x) <= R / 3.0
                                                                : (x >= R / 3.0 && x <= 2.0 * R / 3.0);
        if (in) idx.push_back(i);
    }
    return idx;
}

inline double interior_minimum(const DiscreteOperator& op, const Field& u) {
    double m = std::numeric_limits<double>::infinity();
    for (int i : middle_third(op)) m = std::min(m, u[i]);
    return m;
}

inline double subsolution_scale(const DiscreteOperator& op, const EigenPair& eig, double q, double n_reg) {
    if (!(q > 0.0 && q < 1.0)) throw DomainError("q in (0,1) violated for the sublinear problem");
    const Field w = regularized_weight(op, 2.0 * op.params.s, n_reg);
    double c = std::numeric_limits<double>::infinity();
    for (int i = 0; i < op.size(); ++i) {
        const double v = std::pow(eig.phi1[i], q - 1.0) * w[i] / eig.lambda1;
        c = std::min(c, std::pow(v, 1.0 / (1.0 - q)));
    }
    return c;
}

// Largest c with A(c phi) <= w (c phi)^q evaluated with the discrete action of A on phi.
inline double discrete_subsolution_scale(const DiscreteOperator& op, const Field& phi, const Field& w, double q) {
    const Field Aphi = op.apply(phi);
    double c = std::numeric_limits<double>::infinity();
    for (int i = 0; i < op.size(); ++i)
        if (Aphi[i] > 0.0) c = std::min(c, std::pow(std::pow(phi[i], q) * w[i] / Aphi[i], 1.0 / (1.0 - q)));
    return c;
}

// One step of the lagged scheme: A^{-1}(w u^q).
inline Field sublinear_step(const DiscreteOperator& op, const Field& u, const Field& w, double q) {
    return op.solve(w.cwiseProduct(u.array().max(0.0).pow(q).matrix()));
}

inline double weighted_l1(const DiscreteOperator& op, const Field& u, double beta) {
    const auto w = cell_weights(op.domain, op.grid, WeightSpec::boundary(beta));
    return detail::to_eigen(w).dot(u);
}

struct InnerResult {
    Field u;
    int iterations = 0;
    bool monotone = true;
    bool blow_up = false;
    bool converged = false;
};

inline InnerResult sublinear_inner(const DiscreteOperator& op, const Field& seed, const Field& w, double q,
                                   const SublinearOptions& opt) {
    InnerResult r;
    r.u = seed;
    for (int k = 1; k <= opt.max_inner; ++k) {
        Field next = sublinear_step(op, r.u, w, q);
        if ((next.array() < r.u.array()).any()) r.monotone = false;
        const double change = (next - r.u).cwiseAbs().maxCoeff();
        r.u = std::move(next);
        r.iterations = k;
        if (!r.u.allFinite() || r.u.cwiseAbs().maxCoeff() > opt.blow_up) {
            r.blow_up = true;
            return r;
        }
        if (change <= opt.tol) {
            r.converged = true;
            return r;
        }
    }
    return r;
}

inline IterationTrace sublinear_solve(const DiscreteOperator& op, double q, const std::vector<double>& schedule,
                                      const SublinearOptions& opt = {}) {
    if (!(q > 0.0 && q < 1.0)) throw DomainError("q in (0,1) violated for the sublinear problem");
    for (std::size_t k = 1; k < schedule.size(); ++k)
        if (!(schedule[k] > schedule[k - 1])) throw DomainError("reg_schedule must be increasing");
    IterationTrace tr;
    const auto eig = principal_eigenpair(op);
    tr.phi1 = eig.phi1;
    tr.lambda1 = eig.lambda1;
    const auto battery = test_battery(op);
    const double p = 2.0 * op.params.s;
    Field seed;
    for (std::size_t k = 0; k < schedule.size(); ++k) {
        const double n_reg = schedule[k];
        const Field w = regularized_weight(op, p, n_reg);
        const double c = std::min(subsolution_scale(op, eig, q, n_reg), discrete_subsolution_scale(op, eig.phi1, w, q));
        if (k == 0) seed = c * eig.phi1;
        auto inner = sublinear_inner(op, seed, w, q, opt);
        tr.reg_indices.push_back(n_reg);
        tr.inner_iters.push_back(inner.iterations);
        tr.inner_monotone = tr.inner_monotone && inner.monotone;
        if (inner.blow_up) {
            tr.blow_up = true;
            tr.blow_up_index = n_reg;
            tr.fields.push_back(inner.u);
            tr.sup_norms.push_back(inner.u.cwiseAbs().maxCoeff());
            tr.interior_min.push_back(interior_minimum(op, inner.u));
            tr.weighted_l1.push_back(std::nan(""));
            tr.weighted_l1_beta.push_back(opt.l1_beta);
            tr.residuals.push_back(std::nan(""));
            tr.floor_scale.push_back(c);
            break;
        }
        if (!tr.fields.empty() && (inner.u.array() < tr.fields.back().array()).any()) tr.outer_monotone = false;
        const Field rhs = w.cwiseProduct(inner.u.array().pow(q).matrix());
        tr.residuals.push_back(weak_residual(op, inner.u, rhs, battery));
        tr.sup_norms.push_back(inner.u.maxCoeff());
        tr.interior_min.push_back(interior_minimum(op, inner.u));
        tr.weighted_l1.push_back(weighted_l1(op, inner.u, opt.l1_beta));
        tr.weighted_l1_beta.push_back(opt.l1_beta);
        tr.floor_scale.push_back(c);
        tr.fields.push_back(inner.u);
        seed = inner.u;
    }
    return tr;
}

struct ContrastReport {
    std::vector<double> reg_indices;
    std::vector<double> local_interior_min, local_sup;
    std::vector<double> fractional_interior_min, fractional_sup;
    double local_growth = 0.0;          // last / first interior minimum, local operator
    double fractional_last_change = 0.0;  // relative change of the interior minimum over the last step
    bool local_blow_up = false;
    bool fractional_blow_up = false;
};

inline ContrastReport local_contrast(const DiscreteOperator& fractional, double q, const std::vector<double>& schedule,
                                     const SublinearOptions& opt = {}) {
    const auto local = assemble_local(fractional.domain, fractional.grid);
    const auto tl = sublinear_solve(local, q, schedule, opt);
    const auto tf = sublinear_solve(fractional, q, schedule, opt);
    ContrastReport rep;
    rep.reg_indices = tl.reg_indices;
    rep.local_interior_min = tl.interior_min;
    rep.local_sup = tl.sup_norms;
    rep.fractional_interior_min = tf.interior_min;
    rep.fractional_sup = tf.sup_norms;
    rep.local_blow_up = tl.blow_up;
    rep.fractional_blow_up = tf.blow_up;
    rep.local_growth = tl.interior_min.back() / tl.interior_min.front();
    const auto& m = tf.interior_min;
    rep.fractional_last_change = m.size() >= 2 ? std::fabs(m.back() - m[m.size() - 2]) / m[m.size() - 2] : 0.0;
    return rep;
}

}  // namespace fraclab
