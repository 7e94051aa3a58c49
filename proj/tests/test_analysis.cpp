#include <gtest/gtest.h>

#include <fraclab/analysis.hpp>
#include <fraclab/report.hpp>

#include <cmath>
#include <vector>

using namespace fraclab;

namespace {

struct Samples {
    std::vector<double> d;
    double h, R, D;
};

Samples interval_samples(int n) {
    Samples s;
    s.R = 1.0;
    s.h = 2.0 / (n + 1);
    s.D = 2.0;
    for (int i = 0; i < n; ++i) s.d.push_back(s.R - std::fabs(-1.0 + (i + 1) * s.h));
    return s;
}

}  // namespace

TEST(Fit, ExactPowerRecovered) {
    const auto S = interval_samples(1023);
    std::vector<double> u;
    for (double d : S.d) u.push_back(std::pow(d, 0.6));
    const auto f = fit_boundary_exponent(u, S.d, S.h, S.R, S.D, FitModel::Power);
    EXPECT_NEAR(f.exponent, 0.6, 1e-6);
    EXPECT_GT(f.r2, 0.999999);
    EXPECT_FALSE(f.log_correction);
}

TEST(Fit, ExactPowerLogRecovered) {
    const auto S = interval_samples(1023);
    std::vector<double> u;
    const double Dfit = 2.0 * S.D;
    for (double d : S.d) u.push_back(std::pow(d, 0.5) * std::log(Dfit / d));
    const auto f = fit_boundary_exponent(u, S.d, S.h, S.R, S.D, FitModel::PowerLog);
    EXPECT_NEAR(f.exponent, 0.5, 1e-3);
    const auto g = fit_boundary_exponent(u, S.d, S.h, S.R, S.D, FitModel::Power);
    EXPECT_GT(f.r2, g.r2);
}

TEST(Fit, WindowPolicy) {
    const auto S = interval_samples(511);
    std::vector<double> u;
    for (double d : S.d) u.push_back(d);
    const auto f = fit_boundary_exponent(u, S.d, S.h, S.R, S.D, FitModel::Power);
    EXPECT_GE(f.d_min, 6.0 * S.h * (1 - 1e-9));
    EXPECT_LE(f.d_max, 0.2 * S.R + 1e-12);
}

TEST(Fit, ScaleInvariance) {
    const auto S = interval_samples(777);
    std::vector<double> u, v;
    for (double d : S.d) {
        u.push_back(std::pow(d, 0.37) * (1.0 + 0.3 * d));
        v.push_back(123.456 * u.back());
    }
    for (auto m : {FitModel::Power, FitModel::PowerLog}) {
        const auto a = fit_boundary_exponent(u, S.d, S.h, S.R, S.D, m);
        const auto b = fit_boundary_exponent(v, S.d, S.h, S.R, S.D, m);
        EXPECT_NEAR(a.exponent, b.exponent, 1e-12);
    }
}

TEST(Fit, Deterministic) {
    const auto S = interval_samples(300);
    std::vector<double> u;
    for (double d : S.d) u.push_back(std::sqrt(d) + d * d);
    const auto a = fit_boundary_exponent(u, S.d, S.h, S.R, S.D, FitModel::Power);
    const auto b = fit_boundary_exponent(u, S.d, S.h, S.R, S.D, FitModel::Power);
    EXPECT_EQ(a.exponent, b.exponent);
    EXPECT_EQ(a.r2, b.r2);
}

TEST(Fit, RejectsNonpositiveSamples) {
    const auto S = interval_samples(255);
    std::vector<double> u(S.d.size(), 1.0);
    for (std::size_t i = 0; i < u.size(); ++i)
        if (S.d[i] > 0.1 && S.d[i] < 0.12) u[i] = -1.0;
    EXPECT_THROW(fit_boundary_exponent(u, S.d, S.h, S.R, S.D, FitModel::Power), std::domain_error);
}

TEST(Richardson, GeometricSequence) {
    const double L = 2.5, c = 0.7;
    const auto r = richardson(L + c * 0.1, L + c * 0.05, L + c * 0.025);
    EXPECT_FALSE(r.degenerate);
    EXPECT_NEAR(r.order, 1.0, 1e-10);
    EXPECT_NEAR(r.value, L, 1e-12);
}

TEST(Richardson, SecondOrder) {
    const auto r = richardson(1.0 + 0.04, 1.0 + 0.01, 1.0 + 0.0025);
    EXPECT_NEAR(r.order, 2.0, 1e-10);
    EXPECT_NEAR(r.value, 1.0, 1e-12);
}

TEST(Richardson, DegenerateTriples) {
    EXPECT_TRUE(richardson(1.0, 1.0, 1.0).degenerate);
    EXPECT_TRUE(richardson(1.0, 2.0, 1.5).degenerate);
    const auto r = richardson(1.0, 1.1, 1.3);  // growing differences
    EXPECT_TRUE(r.degenerate);
    EXPECT_EQ(r.value, 1.3);
}

TEST(Richardson, Cauchy) {
    EXPECT_TRUE(is_cauchy({1.0, 0.5, 0.3, 0.25}));
    EXPECT_FALSE(is_cauchy({1.0, 0.9, 0.7}));
}

TEST(Report, Empty) {
    const auto doc = make_report({});
    EXPECT_EQ(doc["checks"], 0);
    EXPECT_EQ(doc["passed"], 0);
    EXPECT_TRUE(doc["results"].empty());
    EXPECT_EQ(doc["schema_version"], kReportSchemaVersion);
}

TEST(Report, OnePassingCheck) {
    const auto doc = make_report({CheckResult{"X1", "demo", true, ojson::object()}});
    EXPECT_EQ(doc["checks"], 1);
    EXPECT_EQ(doc["passed"], 1);
    EXPECT_EQ(doc["results"][0]["id"], "X1");
}

TEST(Report, FieldOrderIsStable) {
    const auto doc = make_report({CheckResult{"A", "a", false, ojson::object()}});
    std::vector<std::string> keys;
    for (auto it = doc.begin(); it != doc.end(); ++it) keys.push_back(it.key());
    EXPECT_EQ(keys, (std::vector<std::string>{"schema_version", "checks", "passed", "results"}));
    EXPECT_EQ(doc.dump(), make_report({CheckResult{"A", "a", false, ojson::object()}}).dump());
}
