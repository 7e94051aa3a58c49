#pragma once

#include <json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "constants.hpp"
#include "grid.hpp"

namespace fraclab {

struct ConfigError : std::invalid_argument {
    std::string constraint;
    ConfigError(std::string c, const std::string& detail)
        : std::invalid_argument(c + (detail.empty() ? "" : ": " + detail)), constraint(std::move(c)) {}
};

// One experiment, read from a single JSON document:
// {"geometry": {"kind": "interval"|"radial", "N": 3, "R": 1.0 or [1.0, 0.5]},
//  "params": {"s": 0.75, "q": 2, "sigma": 1, "alpha": 0.5, "beta": 0.3, "betas": [...], "weight": "boundary"},
//  "grid": {"n": 255} or {"refinement": [512, 1024, 2048]},
//  "schedule": [1, 10, 100],
//  "outputs": {"formats": ["json", "csv"]}}
struct ExperimentConfig {
    DomainKind kind = DomainKind::Interval;
    int N = 1;
    std::vector<double> radii{1.0};
    FracParams params;
    std::vector<double> betas;
    std::string weight = "boundary";
    std::vector<int> sizes;
    std::vector<double> schedule;
    bool write_json = true;
    bool write_csv = true;

    double R() const { return radii.front(); }
    Domain domain(double R) const { return kind == DomainKind::Interval ? Domain::interval(R) : Domain::radial_ball(N, R); }
    Domain domain() const { return domain(R()); }
};

namespace detail {

inline double number(const nlohmann::json& j, const char* key, const std::string& constraint) {
    if (!j.contains(key)) throw ConfigError(constraint, std::string("missing '") + key + "'");
    if (!j.at(key).is_number()) throw ConfigError(constraint, std::string("'") + key + "' must be a number");
    return j.at(key).get<double>();
}

inline std::optional<double> opt_number(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    if (!j.at(key).is_number()) throw ConfigError(std::string(key) + " must be a number", "");
    return j.at(key).get<double>();
}

}  // namespace detail

inline ExperimentConfig parse_config(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ConfigError("config must be a JSON object", "");
    ExperimentConfig c;
    const auto geo = doc.value("geometry", nlohmann::json::object());
    const std::string kind = geo.value("kind", std::string("interval"));
    if (kind == "interval") {
        c.kind = DomainKind::Interval;
        c.N = 1;
        if (geo.contains("N") && geo.at("N").get<int>() != 1) throw ConfigError("interval geometry requires N = 1", "");
    } else if (kind == "radial" || kind == "ball") {
        c.kind = DomainKind::RadialBall;
        if (!geo.contains("N")) throw ConfigError("radial geometry requires N", "");
        c.N = geo.at("N").get<int>();
        if (c.N < 2) throw ConfigError("N >= 2 for radial geometry", "N = " + std::to_string(c.N));
    } else {
        throw ConfigError("geometry.kind in {interval, radial}", "got '" + kind + "'");
    }
    if (geo.contains("R")) {
        const auto& r = geo.at("R");
        c.radii = r.is_array() ? r.get<std::vector<double>>() : std::vector<double>{r.get<double>()};
    }
    if (c.radii.empty()) throw ConfigError("R > 0", "empty radius list");
    for (double R : c.radii)
        if (!(R > 0.0)) throw ConfigError("R > 0", "R = " + std::to_string(R));

    const auto p = doc.value("params", nlohmann::json::object());
    c.params.N = c.N;
    c.params.s = detail::number(p, "s", "s in (0,1)");
    if (!(c.params.s > 0.0 && c.params.s < 1.0)) throw ConfigError("s in (0,1)", "s = " + std::to_string(c.params.s));
    c.params.q = detail::opt_number(p, "q");
    c.params.sigma = detail::opt_number(p, "sigma");
    c.params.alpha = detail::opt_number(p, "alpha");
    c.params.beta = detail::opt_number(p, "beta");
    if (c.params.q && !(*c.params.q > 0.0)) throw ConfigError("q > 0", "");
    if (c.params.sigma && !(*c.params.sigma > 0.0)) throw ConfigError("sigma > 0", "");
    if (c.params.alpha && !(*c.params.alpha >= 0.0)) throw ConfigError("alpha >= 0", "");
    if (p.contains("betas")) c.betas = p.at("betas").get<std::vector<double>>();
    c.weight = p.value("weight", std::string("boundary"));
    if (c.weight != "boundary" && c.weight != "potential") throw ConfigError("weight in {boundary, potential}", c.weight);
    if (c.weight == "potential" && c.kind != DomainKind::RadialBall)
        throw ConfigError("potential weight requires radial geometry", "");

    const auto g = doc.value("grid", nlohmann::json::object());
    if (g.contains("refinement")) {
        c.sizes = g.at("refinement").get<std::vector<int>>();
    } else if (g.contains("n")) {
        c.sizes = {g.at("n").get<int>()};
    } else {
        throw ConfigError("grid.n or grid.refinement required", "");
    }
    if (c.sizes.empty()) throw ConfigError("grid.refinement non-empty", "");
    const int cap = c.kind == DomainKind::Interval ? 8192 : 2048;
    for (int n : c.sizes)
        if (n < 8 || n > cap) throw ConfigError("8 <= n <= " + std::to_string(cap), "n = " + std::to_string(n));

    if (doc.contains("schedule")) c.schedule = doc.at("schedule").get<std::vector<double>>();
    for (std::size_t k = 0; k < c.schedule.size(); ++k) {
        if (!(c.schedule[k] > 0.0)) throw ConfigError("schedule entries > 0", "");
        if (k > 0 && !(c.schedule[k] > c.schedule[k - 1])) throw ConfigError("schedule increasing", "");
    }

    if (doc.contains("outputs")) {
        const auto& o = doc.at("outputs");
        if (o.contains("formats")) {
            const auto f = o.at("formats").get<std::vector<std::string>>();
            c.write_json = c.write_csv = false;
            for (const auto& x : f) {
                if (x == "json") c.write_json = true;
                else if (x == "csv") c.write_csv = true;
                else throw ConfigError("outputs.formats subset of {json, csv}", x);
            }
        }
    }
    return c;
}

}  // namespace fraclab
