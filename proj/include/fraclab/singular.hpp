#pragma once

#include <boost/math/tools/minima.hpp>
#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "linear.hpp"
#include "quadrature.hpp"
#include "sublinear.hpp"

namespace fraclab {

// Datum f >= 0: a constant, a power c d^gamma, or tabulated node values.
struct FSpec {
    enum class Kind { Constant, DistancePower, Tabulated };
    Kind kind = Kind::Constant;
    double value = 1.0;  // constant value or coefficient of d^gamma
    double gamma = 0.0;
    std::vector<double> table;

    static FSpec constant(double c) { return {Kind::Constant, c, 0.0, {}}; }
    static FSpec distance_power(double c, double gamma) { return {Kind::DistancePower, c, gamma, {}}; }
    static FSpec tabulated(std::vector<double> t) { return {Kind::Tabulated, 1.0, 0.0, std::move(t)}; }

    std::string describe() const {
        switch (kind) {
            case Kind::Constant: return "constant " + std::to_string(value);
            case Kind::DistancePower: return std::to_string(value) + " d^" + std::to_string(gamma);
            default: return "tabulated";
        }
    }

    // cell averages of f before truncation
    Field cell_values(const DiscreteOperator& op) const {
        const int n = op.size();
        switch (kind) {
            case Kind::Constant: return Field::Constant(n, value);
            case Kind::DistancePower:
                return value * detail::to_eigen(cell_averages(op.domain, op.grid, WeightSpec::boundary(-gamma)));
            default:
                if (static_cast<int>(table.size()) != n) throw std::invalid_argument("tabulated datum length mismatch");
                return detail::to_eigen(table);
        }
    }
};

struct SingularOptions {
    double tol = 1e-10;
    int max_newton = 200;
    int max_fixed_point = 20000;
    std::vector<double> betas;
};

struct SingularRun {
    double sigma = 0.0;
    double alpha = 0.0;
    std::string f_desc;
    std::vector<double> reg_indices;
    std::vector<Field> fields;
    std::vector<double> interior_min;
    std::vector<double> power_seminorm;
    std::map<double, std::vector<double>> weighted_power;
    std::vector<double> residuals;
    std::vector<int> newton_iters;
    std::vector<bool> used_fallback;
    bool monotone = true;
};

struct SingularProblem {
    Field coef;  // f_n (d + 1/n)^{-alpha}, cell-averaged
    double sigma;
    double shift;  // 1/n

    Field rhs(const Field& u) const { return coef.cwiseProduct((u.array() + shift).pow(-sigma).matrix()); }
    Field jac_diag(const Field& u) const {
        return sigma * coef.cwiseProduct((u.array() + shift).pow(-sigma - 1.0).matrix());
    }
};

inline SingularProblem singular_problem(const DiscreteOperator& op, double sigma, double alpha, const FSpec& f,
                                        double n_reg) {
    Field fn = f.cell_values(op).cwiseMin(n_reg);
    Field w = alpha > 0.0 ? regularized_weight(op, alpha, n_reg) : Field::Ones(op.size());
    return {fn.cwiseProduct(w), sigma, 1.0 / n_reg};
}

struct NewtonResult {
    Field u;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
    bool fallback = false;
};

inline double singular_residual(const DiscreteOperator& op, const SingularProblem& pb, const Field& u) {
    const Field g = pb.rhs(u);
    return (op.apply(u) - g).cwiseAbs().maxCoeff() / g.cwiseAbs().maxCoeff();
}

// Damped Newton on A u = coef (u + 1/n)^{-sigma}; the Jacobian A + diag(sigma coef (u+1/n)^{-sigma-1})
// stays symmetric positive definite in the stored form.
inline NewtonResult singular_newton(const DiscreteOperator& op, const SingularProblem& pb, Field u,
                                    const SingularOptions& opt) {
    NewtonResult out;
    const auto& S = op.symmetric();
    const Field& sv = op.sqrt_volumes();
    auto merit = [&](const Field& x) { return sv.cwiseProduct(op.apply(x) - pb.rhs(x)).norm(); };
    double m = merit(u);
    int stagnant = 0;
    for (int it = 1; it <= opt.max_newton; ++it) {
        out.residual = singular_residual(op, pb, u);
        out.iterations = it - 1;
        if (out.residual <= opt.tol) {
            out.converged = true;
            out.u = u;
            return out;
        }
        const Field F = op.apply(u) - pb.rhs(u);
        Eigen::MatrixXd J = S;
        J.diagonal() += pb.jac_diag(u);
        Eigen::LLT<Eigen::MatrixXd> llt(J);
        if (llt.info() != Eigen::Success) break;
        const Field step = llt.solve(sv.cwiseProduct(F)).cwiseQuotient(sv);
        double t = 1.0;
        Field trial;
        double mt = 0.0;
        for (int bt = 0; bt < 40; ++bt) {
            trial = u - t * step;
            if ((trial.array() + pb.shift > 0.0).all()) {
                mt = merit(trial);
                if (mt < m) break;
            }
            t *= 0.5;
        }
        if (!(mt < m)) {
            if (++stagnant > 3) break;
        } else {
            stagnant = 0;
        }
        u = trial;
        m = mt;
    }
    out.residual = singular_residual(op, pb, u);
    out.converged = out.residual <= opt.tol;
    out.u = u;
    if (out.converged) return out;

    // lagged fixed point with averaging
    out.fallback = true;
    for (int it = 1; it <= opt.max_fixed_point; ++it) {
        const Field next = op.solve(pb.rhs(u));
        u = 0.5 * (u + next);
        if (it % 10 == 0) {
            out.residual = singular_residual(op, pb, u);
            if (out.residual <= opt.tol) {
                out.converged = true;
                break;
            }
        }
    }
    out.u = u;
    if (!out.converged)
        throw ConvergenceError("singular solve failed, last residual " + std::to_string(out.residual));
    return out;
}

inline double power_seminorm(const DiscreteOperator& op, const Field& u, double sigma) {
    const Field v = u.cwiseMax(0.0).array().pow(0.5 * (sigma + 1.0)).matrix();
    return seminorm_sq(op, v);
}

inline double weighted_power(const DiscreteOperator& op, const Field& u, double sigma, double beta) {
    const Field w = detail::to_eigen(cell_weights(op.domain, op.grid, WeightSpec::boundary(beta)));
    return w.dot(u.cwiseMax(0.0).array().pow(sigma + 1.0).matrix());
}

inline SingularRun singular_solve(const DiscreteOperator& op, double sigma, double alpha, const FSpec& f,
                                  const std::vector<double>& schedule, const SingularOptions& opt = {}) {
    if (!(sigma > 0.0)) throw DomainError("sigma > 0 violated");
    if (!(alpha >= 0.0)) throw DomainError("alpha >= 0 violated");
    if ((f.cell_values(op).array() < 0.0).any()) throw DomainError("f >= 0 violated");
    SingularRun run;
    run.sigma = sigma;
    run.alpha = alpha;
    run.f_desc = f.describe();
    Field seed;
    for (std::size_t k = 0; k < schedule.size(); ++k) {
        const double n_reg = schedule[k];
        const auto pb = singular_problem(op, sigma, alpha, f, n_reg);
        if (k == 0) seed = solve_linear(op, pb.rhs(Field::Zero(op.size())));
        auto res = singular_newton(op, pb, seed, opt);
        if (!run.fields.empty() && (res.u.array() < run.fields.back().array()).any()) run.monotone = false;
        run.reg_indices.push_back(n_reg);
        run.fields.push_back(res.u);
        run.residuals.push_back(res.residual);
        run.newton_iters.push_back(res.iterations);
        run.used_fallback.push_back(res.fallback);
        run.interior_min.push_back(interior_minimum(op, res.u));
        run.power_seminorm.push_back(power_seminorm(op, res.u, sigma));
        for (double b : opt.betas) run.weighted_power[b].push_back(weighted_power(op, res.u, sigma, b));
        seed = res.u;
    }
    return run;
}

inline std::vector<double> power_seminorm_diag(const SingularRun& run) { return run.power_seminorm; }

inline std::vector<double> weighted_power_diag(const DiscreteOperator& op, const SingularRun& run, double beta) {
    if (!(beta > 0.0 && beta < 2.0 * op.params.s)) throw DomainError("beta in (0, 2s) violated");
    std::vector<double> out;
    for (const auto& u : run.fields) out.push_back(weighted_power(op, u, run.sigma, beta));
    return out;
}

// max_i [A(u^{sigma+1}) - (sigma+1) u^sigma A u]_i relative to max |(sigma+1) u^sigma A u|
inline double kato_defect(const DiscreteOperator& op, const Field& u, double sigma) {
    const Field up = u.cwiseMax(0.0);
    const Field lhs = op.apply(up.array().pow(sigma + 1.0).matrix());
    const Field rhs = (sigma + 1.0) * up.array().pow(sigma).matrix().cwiseProduct(op.apply(up));
    return (lhs - rhs).maxCoeff() / rhs.cwiseAbs().maxCoeff();
}

// (a-b)(a^sigma - b^sigma) / (a^{(sigma+1)/2} - b^{(sigma+1)/2})^2 as a function of x = log(a/b) > 0
inline double alge3_ratio_log(double x, double sigma) {
    const double m = 0.5 * (sigma + 1.0);
    const double den = std::expm1(m * x);
    return std::expm1(x) * std::expm1(sigma * x) / (den * den);
}

inline double alge3_ratio(double a, double b, double sigma) {
    if (a == b) return std::numeric_limits<double>::quiet_NaN();
    return alge3_ratio_log(std::fabs(std::log(a / b)), sigma);
}

// Best constant c_3: a log-spaced scan brackets the minimum of the ratio over x = log(a/b), Brent refines
// it, and the limits 4 sigma/(sigma+1)^2 (x -> 0) and 1 (x -> infinity) are included.
inline double alge3_constant(double sigma) {
    auto f = [&](double x) { return alge3_ratio_log(x, sigma); };
    const int m = 400;
    const double lo = std::log(1e-6), hi = std::log(60.0);
    auto xs = [&](int k) { return std::exp(lo + (hi - lo) * k / m); };
    int best = 0;
    for (int k = 1; k <= m; ++k)
        if (f(xs(k)) < f(xs(best))) best = k;
    const auto r = boost::math::tools::brent_find_minima(f, xs(std::max(best - 1, 0)), xs(std::min(best + 1, m)), 52);
    const double at_zero = 4.0 * sigma / ((sigma + 1.0) * (sigma + 1.0));
    return std::min({r.second, f(xs(best)), at_zero, 1.0});
}

}  // namespace fraclab
