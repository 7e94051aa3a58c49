#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "operator.hpp"

namespace fraclab {

enum class FitModel { Power, PowerLog };

struct ExponentFit {
    double exponent = 0.0;
    double intercept = 0.0;
    bool log_correction = false;
    double r2 = 0.0;
    double d_min = 0.0;
    double d_max = 0.0;
    int samples = 0;
};

struct FitWindow {
    int excluded_cells = 5;
    double max_fraction_of_R = 0.2;
};

// Weighted least squares of log u on log d over the window 6h <= d <= 0.2 R.  Samples carry weight
// h/d so that every decade of d contributes equally.  The log model subtracts log log(D/d),
// D = 2 diam(Omega).
inline ExponentFit fit_boundary_exponent(const std::vector<double>& u, const std::vector<double>& d, double h,
                                         double R, double diameter, FitModel model, FitWindow win = {}) {
    if (u.size() != d.size()) throw std::invalid_argument("fit: length mismatch");
    const double lo = (win.excluded_cells + 1) * h * (1.0 - 1e-9);
    const double hi = win.max_fraction_of_R * R * (1.0 + 1e-12);
    const double D = 2.0 * diameter;
    double sw = 0.0, sx = 0.0, sy = 0.0;
    std::vector<double> X, Y, Wt;
    ExponentFit fit;
    fit.log_correction = model == FitModel::PowerLog;
    fit.d_min = std::numeric_limits<double>::infinity();
    fit.d_max = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (d[i] < lo || d[i] > hi) continue;
        if (!(u[i] > 0.0)) throw std::domain_error("fit: nonpositive sample in window at d = " + std::to_string(d[i]));
        double y = std::log(u[i]);
        if (fit.log_correction) y -= std::log(std::log(D / d[i]));
        const double x = std::log(d[i]);
        const double w = h / d[i];
        X.push_back(x);
        Y.push_back(y);
        Wt.push_back(w);
        sw += w;
        sx += w * x;
        sy += w * y;
        fit.d_min = std::min(fit.d_min, d[i]);
        fit.d_max = std::max(fit.d_max, d[i]);
    }
    fit.samples = static_cast<int>(X.size());
    if (fit.samples < 3) throw std::domain_error("fit: fewer than 3 samples in window");
    const double mx = sx / sw, my = sy / sw;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t k = 0; k < X.size(); ++k) {
        const double dx = X[k] - mx, dy = Y[k] - my;
        sxx += Wt[k] * dx * dx;
        sxy += Wt[k] * dx * dy;
        syy += Wt[k] * dy * dy;
    }
    fit.exponent = sxy / sxx;
    fit.intercept = my - fit.exponent * mx;
    double sse = 0.0;
    for (std::size_t k = 0; k < X.size(); ++k) {
        const double r = Y[k] - (fit.intercept + fit.exponent * X[k]);
        sse += Wt[k] * r * r;
    }
    fit.r2 = syy > 0.0 ? std::clamp(1.0 - sse / syy, 0.0, 1.0) : 1.0;
    return fit;
}

inline ExponentFit fit_boundary_exponent(const Field& u, const DiscreteOperator& op, FitModel model) {
    std::vector<double> uv(u.data(), u.data() + u.size());
    return fit_boundary_exponent(uv, op.distances(), op.grid.h, op.domain.R, op.domain.diameter(), model);
}

struct RichardsonResult {
    double value = 0.0;
    double order = std::numeric_limits<double>::quiet_NaN();
    bool degenerate = false;
};

inline RichardsonResult richardson(double v_h, double v_h2, double v_h4) {
    RichardsonResult out;
    const double d1 = v_h - v_h2, d2 = v_h2 - v_h4;
    if (d1 == 0.0 || d2 == 0.0 || d1 * d2 < 0.0) {
        out.value = v_h4;
        out.degenerate = true;
        return out;
    }
    out.order = std::log2(d1 / d2);
    if (!(out.order > 0.0)) {
        out.value = v_h4;
        out.degenerate = true;
        return out;
    }
    out.value = v_h4 + (v_h4 - v_h2) / (std::pow(2.0, out.order) - 1.0);
    return out;
}

// Successive gaps of a refinement trace shrink in magnitude.
inline bool is_cauchy(const std::vector<double>& trace) {
    if (trace.size() < 3) return true;
    for (std::size_t k = 2; k < trace.size(); ++k)
        if (std::fabs(trace[k] - trace[k - 1]) >= std::fabs(trace[k - 1] - trace[k - 2])) return false;
    return true;
}

}  // namespace fraclab
