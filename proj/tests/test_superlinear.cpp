#include <gtest/gtest.h>

#include <fraclab/fraclab.hpp>

#include <cmath>

using namespace fraclab;

namespace {

const DiscreteOperator& ball(int n, double R = 1.0) {
    static std::map<std::pair<int, double>, DiscreteOperator> cache;
    auto key = std::pair{n, R};
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, assemble(FracParams{3, 0.75}, Domain::radial_ball(3, R), n)).first;
    return it->second;
}

}  // namespace

TEST(Superlinear, GroundStateSolvesEulerLagrange) {
    const auto gs = ground_state(ball(127), 2.0, 100.0);
    EXPECT_LE(gs.el_residual, 1e-8);
    EXPECT_GT(gs.field.minCoeff(), 0.0);
    EXPECT_NEAR(gs.energy, gs.mp_level, 1e-8 * gs.mp_level);
}

TEST(Superlinear, SupNormAboveHardyFloor) {
    const auto& op = ball(127);
    const double hardy = hardy_constant(op).constant;
    for (double n_reg : {1.0, 10.0, 100.0}) {
        const auto gs = ground_state(op, 2.0, n_reg);
        EXPECT_GE(gs.sup_norm, hardy) << n_reg;  // q - 1 = 1
        EXPECT_GE(gs.argmax_distance, 5.0 * op.grid.h);
    }
}

TEST(Superlinear, QuotientHomogeneity) {
    const auto& op = ball(63);
    const double p = 3.0;
    const Field omega = detail::to_eigen(cell_weights(op.domain, op.grid, WeightSpec::boundary(1.5, 0.01)));
    const auto a = minimize_on_constraint(op, omega, p);
    const auto b = minimize_on_constraint(op, 8.0 * omega, p);
    EXPECT_NEAR(b.Q, a.Q * std::pow(8.0, -2.0 / p), 1e-8 * a.Q);
    EXPECT_NEAR(detail::constraint(omega, a.v, p), 1.0, 1e-12);
}

TEST(Superlinear, SequenceDecreasesWithRegularization) {
    const auto rep = apriori_sweep(ball(127), 2.0, {1, 10, 100});
    for (std::size_t k = 1; k < rep.sup_norms.size(); ++k) EXPECT_LT(rep.sup_norms[k], rep.sup_norms[k - 1]);
    for (double v : rep.sup_pow) EXPECT_GE(v, rep.hardy);
}

TEST(Superlinear, ExponentRange) {
    EXPECT_THROW(ground_state(ball(63), 1.0, 10.0), DomainError);
    EXPECT_THROW(ground_state(ball(63), 3.0, 10.0), DomainError);  // 2*_s - 1 = 3
    EXPECT_DOUBLE_EQ(subcritical_upper(FracParams{3, 0.75}), 3.0);
    EXPECT_TRUE(std::isinf(subcritical_upper(FracParams{1, 0.75})));
}

TEST(Critical, PositiveAndScaling) {
    const auto c1 = critical_SR(ball(255));
    const auto c2 = critical_SR(ball(127, 0.5));
    EXPECT_GT(c1.S_R, 0.0);
    EXPECT_NEAR(c1.normalization, 1.0, 1e-12);
    EXPECT_LE(c1.el_residual, 1e-6);
    EXPECT_LE(scaling_check(c1, c2, 0.75, 3), 0.03);
}

TEST(Critical, RadialBoundConstantStableUnderRefinement) {
    const auto a = critical_SR(ball(127));
    const auto b = critical_SR(ball(255));
    EXPECT_NEAR(b.radial_bound_const / a.radial_bound_const, 1.0, 0.05);
    EXPECT_NEAR(b.S_R / a.S_R, 1.0, 0.01);
}

TEST(Critical, RequiresRadialGeometry) {
    const auto op = assemble(FracParams{1, 0.25}, Domain::interval(1.0), 64);
    EXPECT_THROW(critical_SR(op), DomainError);
}

TEST(Critical, RefinementTraceIsCauchy) {
    std::vector<double> trace;
    for (int n : {63, 127, 255}) trace.push_back(critical_SR(ball(n)).S_R);
    EXPECT_TRUE(is_cauchy(trace));
}
