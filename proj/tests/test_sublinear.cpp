#include <gtest/gtest.h>

#include <fraclab/fraclab.hpp>

#include <cmath>

using namespace fraclab;

namespace {

const DiscreteOperator& op256(double s) {
    static std::map<double, DiscreteOperator> cache;
    auto it = cache.find(s);
    if (it == cache.end()) it = cache.emplace(s, assemble(FracParams{1, s}, Domain::interval(1.0), 256)).first;
    return it->second;
}

}  // namespace

TEST(Sublinear, DiscreteSubsolution) {
    const auto& op = op256(0.4);
    const double q = 0.5, n_reg = 50.0;
    const auto eig = principal_eigenpair(op);
    const Field w = regularized_weight(op, 0.8, n_reg);
    const double c = discrete_subsolution_scale(op, eig.phi1, w, q);
    const Field lhs = op.apply(c * eig.phi1);
    const Field rhs = w.cwiseProduct((c * eig.phi1).array().pow(q).matrix());
    EXPECT_LE((lhs - rhs).maxCoeff(), 1e-12 * rhs.maxCoeff());
    // the eigenvalue-based scale is a subsolution of the continuous problem; it is finite and positive
    const double c2 = subsolution_scale(op, eig, q, n_reg);
    EXPECT_GT(c2, 0.0);
    EXPECT_TRUE(std::isfinite(c2));
}

TEST(Sublinear, MonotoneTraceAboveFloor) {
    for (double s : {0.3, 0.6}) {
        const auto& op = op256(s);
        const auto tr = sublinear_solve(op, 0.5, {1, 10, 100, 1000});
        EXPECT_FALSE(tr.blow_up);
        EXPECT_TRUE(tr.inner_monotone);
        EXPECT_TRUE(tr.outer_monotone);
        for (std::size_t k = 0; k < tr.fields.size(); ++k) {
            EXPECT_GE((tr.fields[k] - tr.floor_scale[k] * tr.phi1).minCoeff(), 0.0);
            EXPECT_LE(tr.residuals[k], 1e-6);
            if (k > 0) {
                EXPECT_GE(tr.sup_norms[k], tr.sup_norms[k - 1]);
                EXPECT_GE(tr.weighted_l1[k], tr.weighted_l1[k - 1]);
            }
        }
    }
}

TEST(Sublinear, ComparisonUniqueness) {
    const auto& op = op256(0.5);
    const double q = 0.5;
    const Field w = regularized_weight(op, 1.0, 100.0);
    const auto eig = principal_eigenpair(op);
    const double c = discrete_subsolution_scale(op, eig.phi1, w, q);
    SublinearOptions opt;
    opt.tol = 1e-13;
    const auto a = sublinear_inner(op, c * eig.phi1, w, q, opt);
    const auto b = sublinear_inner(op, 0.5 * c * eig.phi1, w, q, opt);
    ASSERT_TRUE(a.converged && b.converged);
    EXPECT_TRUE(a.monotone && b.monotone);
    EXPECT_LE((a.u - b.u).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Sublinear, ReflectionSymmetry) {
    const auto& op = op256(0.3);
    const auto tr = sublinear_solve(op, 0.7, {1, 100});
    const Field& u = tr.fields.back();
    const int n = op.size();
    for (int i = 0; i < n; ++i) EXPECT_NEAR(u[i], u[n - 1 - i], 1e-10 * u.maxCoeff());
}

TEST(Sublinear, SmallExponentLimit) {
    const auto& op = op256(0.5);
    const double q = 1e-4, n_reg = 100.0;
    const auto tr = sublinear_solve(op, q, {n_reg});
    const Field ref = op.solve(regularized_weight(op, 1.0, n_reg));
    EXPECT_LE((tr.fields.back() - ref).cwiseAbs().maxCoeff() / ref.maxCoeff(), 5e-3);
}

TEST(Sublinear, ScalingOfTheWeight) {
    // A u = lambda w u^q  has solution lambda^{1/(1-q)} u_1
    const auto& op = op256(0.4);
    const double q = 0.5;
    const Field w = regularized_weight(op, 0.8, 10.0);
    const auto eig = principal_eigenpair(op);
    SublinearOptions opt;
    opt.tol = 1e-13;
    const auto a = sublinear_inner(op, discrete_subsolution_scale(op, eig.phi1, w, q) * eig.phi1, w, q, opt);
    const Field w4 = 4.0 * w;
    const auto b = sublinear_inner(op, discrete_subsolution_scale(op, eig.phi1, w4, q) * eig.phi1, w4, q, opt);
    EXPECT_LE((b.u - 16.0 * a.u).cwiseAbs().maxCoeff(), 1e-8 * b.u.maxCoeff());
}

TEST(Sublinear, Preconditions) {
    const auto& op = op256(0.4);
    EXPECT_THROW(sublinear_solve(op, 1.0, {1, 10}), DomainError);
    EXPECT_THROW(sublinear_solve(op, 0.0, {1, 10}), DomainError);
    EXPECT_THROW(sublinear_solve(op, 0.5, {10, 1}), DomainError);
}

TEST(Sublinear, WeightedL1OfOnesIsTheWeightIntegral) {
    const auto& op = op256(0.4);
    // dual cells cover [-1 + h/2, 1 - h/2]
    const double e = 0.5 * op.grid.h;
    for (double beta : {0.0, 0.3, 0.8})
        EXPECT_NEAR(weighted_l1(op, Field::Ones(op.size()), beta), 2.0 * (1.0 - std::pow(e, 1.0 - beta)) / (1.0 - beta), 1e-10)
            << beta;
}

TEST(Sublinear, MiddleThird) {
    const auto& op = op256(0.4);
    for (int i : middle_third(op)) EXPECT_LE(std::fabs(op.grid.nodes[i]), 1.0 / 3.0);
    const auto rop = assemble(FracParams{3, 0.5}, Domain::radial_ball(3, 1.0), 60);
    for (int i : middle_third(rop)) {
        EXPECT_GE(rop.grid.nodes[i], 1.0 / 3.0);
        EXPECT_LE(rop.grid.nodes[i], 2.0 / 3.0);
    }
}

TEST(Sublinear, LocalOperatorBlowsUp) {
    const auto& op = op256(0.3);
    const auto rep = local_contrast(op, 0.5, {10, 100, 1000});
    EXPECT_GT(rep.local_growth, 5.0);
    EXPECT_LT(rep.fractional_last_change, 0.1);
}

TEST(Sublinear, OneStepEquivariance) {
    const auto& op = op256(0.3);
    const double q = 0.4, t = 3.0;
    const Field w = regularized_weight(op, 0.6, 20.0);
    const Field u = principal_eigenpair(op).phi1;
    const double k = std::pow(t, 1.0 / (1.0 - q));
    const Field lhs = sublinear_step(op, k * u, t * w, q);
    const Field rhs = k * sublinear_step(op, u, w, q);
    EXPECT_LE((lhs - rhs).cwiseAbs().maxCoeff(), 1e-10 * rhs.maxCoeff());
}
