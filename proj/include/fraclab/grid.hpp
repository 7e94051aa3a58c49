#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "constants.hpp"

namespace fraclab {

enum class DomainKind { Interval, RadialBall };

struct Domain {
    DomainKind kind = DomainKind::Interval;
    int N = 1;
    double R = 1.0;

    static Domain interval(double R) {
        if (!(R > 0.0)) throw DomainError("R > 0 violated");
        return {DomainKind::Interval, 1, R};
    }
    static Domain radial_ball(int N, double R) {
        if (!(R > 0.0)) throw DomainError("R > 0 violated");
        if (N < 2) throw DomainError("radial ball requires N >= 2");
        return {DomainKind::RadialBall, N, R};
    }

    // x is the signed coordinate on the interval or the radius on the ball
    double distance(double x) const { return R - std::fabs(x); }
    double diameter() const { return 2.0 * R; }
    std::string name() const { return kind == DomainKind::Interval ? "interval" : "radial"; }
};

struct GridSpec {
    int n = 0;
    double h = 0.0;
    std::vector<double> nodes;

    std::vector<double> distances(const Domain& dom) const {
        std::vector<double> d(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i) d[i] = dom.distance(nodes[i]);
        return d;
    }
};

inline GridSpec make_grid(const Domain& dom, int n) {
    if (n < 1) throw DomainError("n >= 1 violated");
    GridSpec g;
    g.n = n;
    if (dom.kind == DomainKind::Interval) {
        g.h = 2.0 * dom.R / (n + 1);
        g.nodes.resize(n);
        for (int i = 0; i < n; ++i) g.nodes[i] = -dom.R + (i + 1) * g.h;
    } else {
        g.h = dom.R / (n + 1);
        g.nodes.resize(n);
        for (int i = 0; i < n; ++i) g.nodes[i] = (i + 1) * g.h;
    }
    return g;
}

// Quadrature volume of each dual cell [x_i - h/2, x_i + h/2].
inline std::vector<double> volume_weights(const Domain& dom, const GridSpec& g) {
    std::vector<double> v(g.n);
    if (dom.kind == DomainKind::Interval) {
        for (int i = 0; i < g.n; ++i) v[i] = g.h;
    } else {
        const double area = sphere_area(dom.N - 1);
        for (int i = 0; i < g.n; ++i) v[i] = area * std::pow(g.nodes[i], dom.N - 1) * g.h;
    }
    return v;
}

}  // namespace fraclab
