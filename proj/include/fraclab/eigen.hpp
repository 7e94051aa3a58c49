#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fraclab {

struct LowestEigen {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    Eigen::VectorXd vector;
    double residual = 0.0;  // ||M y - lambda y||_2 with ||y||_2 = 1
    int iterations = 0;
};

struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Block inverse iteration with Rayleigh-Ritz for the smallest eigenvalues of a symmetric positive
// definite M, given M X and M^{-1} X on blocks.
template <class ApplyM, class SolveM>
LowestEigen lowest_eigenpair(Eigen::Index n, ApplyM&& apply_m, SolveM&& solve_m, double tol = 1e-12,
                             int max_iter = 10000) {
    const Eigen::Index b = std::min<Eigen::Index>(n, 8);
    Eigen::MatrixXd X(n, b);
    // deterministic start: smooth positive vector plus low-frequency modes
    for (Eigen::Index i = 0; i < n; ++i) {
        const double t = (i + 1.0) / (n + 1.0);
        for (Eigen::Index j = 0; j < b; ++j) X(i, j) = std::sin((j + 1) * std::numbers::pi * t) + (j == 0 ? 0.1 : 0.0);
    }
    LowestEigen out;
    double prev = 0.0;
    for (int it = 1; it <= max_iter; ++it) {
        Eigen::MatrixXd Y = solve_m(X);
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(Y);
        Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, b);
        Eigen::MatrixXd MQ = apply_m(Q);
        Eigen::MatrixXd T = Q.transpose() * MQ;
        T = 0.5 * (T + T.transpose());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        X = Q * es.eigenvectors();
        const double lam = es.eigenvalues()(0);
        Eigen::VectorXd y = X.col(0);
        Eigen::VectorXd r = MQ * es.eigenvectors().col(0) - lam * y;
        out.lambda1 = lam;
        out.lambda2 = b > 1 ? es.eigenvalues()(1) : lam;
        out.vector = y;
        out.residual = r.norm();
        out.iterations = it;
        if (it > 1 && std::fabs(lam - prev) <= tol * std::fabs(lam) && out.residual <= 1e-10 * std::fabs(lam))
            return out;
        prev = lam;
    }
    throw ConvergenceError("inverse iteration did not converge, last residual " + std::to_string(out.residual));
}

}  // namespace fraclab
