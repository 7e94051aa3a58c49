#include <CLI11.hpp>
#include <fraclab/acceptance.hpp>
#include <fraclab/config.hpp>
#include <fraclab/fraclab.hpp>
#include <fraclab/io.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

namespace fs = std::filesystem;
using fraclab::ojson;

namespace {

struct Context {
    fraclab::ExperimentConfig cfg;
    fs::path out;
    fs::path cache_dir;

    fraclab::DiscreteOperator op(int n, double R) const {
        fraclab::FracParams p;
        p.N = cfg.N;
        p.s = cfg.params.s;
        return fraclab::io::cached_assemble(p, cfg.domain(R), n, cache_dir);
    }
    fraclab::DiscreteOperator op(int n) const { return op(n, cfg.R()); }

    void field(const std::string& name, const fraclab::DiscreteOperator& o, const fraclab::Field& u) const {
        if (cfg.write_csv) fraclab::io::write_field_csv(out / name, o, u);
    }
    void columns(const std::string& name, const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& cols) const {
        if (cfg.write_csv) fraclab::io::write_columns_csv(out / name, header, cols);
    }
};

struct Outcome {
    ojson summary = ojson::object();
    bool ok = true;
};

double require(const std::optional<double>& v, const char* what) {
    if (!v) throw fraclab::ConfigError(std::string(what) + " required for this subcommand", "");
    return *v;
}

std::vector<double> schedule_or(const Context& ctx, std::vector<double> fallback) {
    return ctx.cfg.schedule.empty() ? fallback : ctx.cfg.schedule;
}

ojson fit_json(const fraclab::Field& u, const fraclab::DiscreteOperator& op, fraclab::FitModel model) {
    try {
        const auto f = fraclab::fit_boundary_exponent(u, op, model);
        return {{"exponent", f.exponent}, {"r2", f.r2}, {"log_correction", f.log_correction},
                {"window", {f.d_min, f.d_max}}, {"samples", f.samples}};
    } catch (const std::domain_error& e) {
        return {{"exponent", nullptr}, {"skipped", e.what()}};
    }
}

Outcome run_constants(const Context& ctx) {
    Outcome o;
    const auto c = fraclab::constants(ctx.cfg.params);
    o.summary["N"] = ctx.cfg.N;
    o.summary["s"] = ctx.cfg.params.s;
    o.summary["a_Ns"] = c.a_Ns;
    o.summary["kernel_constant"] = c.c_Ns;
    o.summary["K_Ns"] = c.K_Ns;
    o.summary["Lambda_Ns"] = std::isfinite(c.Lambda_Ns) ? ojson(c.Lambda_Ns) : ojson(nullptr);
    o.summary["two_star_s"] = std::isfinite(c.two_star_s) ? ojson(c.two_star_s) : ojson(nullptr);
    o.summary["getoor_constant"] = fraclab::getoor_constant(ctx.cfg.N, ctx.cfg.params.s);
    return o;
}

Outcome run_linear_solve(const Context& ctx, bool aux) {
    Outcome o;
    ojson runs = ojson::array();
    const double beta = aux ? require(ctx.cfg.params.beta, "params.beta") : 0.0;
    for (int n : ctx.cfg.sizes) {
        const auto op = ctx.op(n);
        const fraclab::Field u = aux ? fraclab::auxiliary(op, beta) : fraclab::torsion(op);
        const fraclab::Field rhs =
            aux ? fraclab::detail::to_eigen(fraclab::distance_power_load(op.domain, op.grid, op.params.s, beta))
                : fraclab::Field::Ones(n);
        const double res = (op.apply(u) - rhs).cwiseAbs().maxCoeff() / rhs.cwiseAbs().maxCoeff();
        const bool positive = u.minCoeff() > 0.0;
        ojson e{{"n", n}, {"h", op.grid.h}, {"residual", res}, {"positive", positive}, {"sup_norm", u.maxCoeff()}};
        e["fit_power"] = fit_json(u, op, fraclab::FitModel::Power);
        e["fit_power_log"] = fit_json(u, op, fraclab::FitModel::PowerLog);
        o.ok = o.ok && positive && res <= 1e-10;
        runs.push_back(e);
        ctx.field((aux ? "auxiliary_n" : "torsion_n") + std::to_string(n) + ".csv", op, u);
    }
    if (aux) o.summary["beta"] = beta;
    o.summary["runs"] = runs;
    return o;
}

Outcome run_eigen(const Context& ctx) {
    Outcome o;
    std::vector<double> vals;
    ojson runs = ojson::array();
    for (int n : ctx.cfg.sizes) {
        const auto op = ctx.op(n);
        const auto ep = fraclab::principal_eigenpair(op);
        vals.push_back(ep.lambda1);
        const bool simple = ep.lambda2 > ep.lambda1 && ep.phi1.minCoeff() > 0.0;
        o.ok = o.ok && simple;
        runs.push_back({{"n", n}, {"lambda1", ep.lambda1}, {"lambda2", ep.lambda2}, {"residual", ep.residual},
                        {"positive_simple", simple}});
        ctx.field("phi1_n" + std::to_string(n) + ".csv", op, ep.phi1);
    }
    o.summary["runs"] = runs;
    if (vals.size() >= 3) {
        const auto r = fraclab::richardson(vals[vals.size() - 3], vals[vals.size() - 2], vals.back());
        o.summary["richardson"] = {{"value", r.value},
                                   {"order", r.degenerate ? ojson(nullptr) : ojson(r.order)},
                                   {"degenerate", r.degenerate}};
    }
    return o;
}

Outcome run_hardy(const Context& ctx) {
    Outcome o;
    const auto kind = ctx.cfg.weight == "potential" ? fraclab::HardyWeight::Potential : fraclab::HardyWeight::Boundary;
    const auto c = fraclab::constants(ctx.cfg.params);
    std::vector<double> trace;
    std::vector<double> ns;
    for (int n : ctx.cfg.sizes) {
        const auto op = ctx.op(n);
        const auto est = fraclab::hardy_constant(op, kind);
        trace.push_back(est.constant);
        ns.push_back(n);
        o.ok = o.ok && est.constant > 0.0;
        ctx.field("hardy_minimizer_n" + std::to_string(n) + ".csv", op, est.minimizer);
    }
    o.summary["weight"] = ctx.cfg.weight;
    o.summary["reference_constant"] = kind == fraclab::HardyWeight::Boundary ? c.K_Ns : c.Lambda_Ns;
    o.summary["sizes"] = ctx.cfg.sizes;
    o.summary["trace"] = trace;
    o.summary["cauchy"] = fraclab::is_cauchy(trace);
    o.summary["below_half"] = ctx.cfg.params.s < 0.5;
    if (trace.size() >= 3) {
        const auto r = fraclab::richardson(trace[trace.size() - 3], trace[trace.size() - 2], trace.back());
        o.summary["richardson"] = {{"value", r.value}, {"degenerate", r.degenerate}};
    }
    ctx.columns("hardy_trace.csv", {"n", "constant"}, {ns, trace});
    return o;
}

Outcome run_sublinear(const Context& ctx) {
    Outcome o;
    const double q = require(ctx.cfg.params.q, "params.q");
    const auto op = ctx.op(ctx.cfg.sizes.back());
    const auto tr = fraclab::sublinear_solve(op, q, schedule_or(ctx, fraclab::acceptance::kSublinearSchedule));
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < tr.fields.size(); ++k) gap = std::min(gap, (tr.fields[k] - tr.floor_scale[k] * tr.phi1).minCoeff());
    o.ok = !tr.blow_up && tr.outer_monotone && tr.inner_monotone && gap >= 0.0;
    o.summary = {{"n", op.size()},
                 {"q", q},
                 {"schedule", tr.reg_indices},
                 {"sup_norms", tr.sup_norms},
                 {"interior_min", tr.interior_min},
                 {"weighted_l1", tr.weighted_l1},
                 {"residuals", tr.residuals},
                 {"inner_iterations", tr.inner_iters},
                 {"outer_monotone", tr.outer_monotone},
                 {"inner_monotone", tr.inner_monotone},
                 {"min_gap_above_subsolution", gap},
                 {"blow_up", tr.blow_up}};
    ctx.columns("sublinear_trace.csv", {"n_reg", "sup_norm", "interior_min", "weighted_l1", "residual"},
                {tr.reg_indices, tr.sup_norms, tr.interior_min, tr.weighted_l1, tr.residuals});
    if (!tr.fields.empty()) ctx.field("sublinear_last.csv", op, tr.fields.back());
    return o;
}

Outcome run_contrast(const Context& ctx) {
    Outcome o;
    if (ctx.cfg.kind != fraclab::DomainKind::Interval) throw fraclab::ConfigError("contrast requires interval geometry", "");
    const double q = require(ctx.cfg.params.q, "params.q");
    const auto op = ctx.op(ctx.cfg.sizes.back());
    const auto rep = fraclab::local_contrast(op, q, schedule_or(ctx, {10, 100, 1000, 5000, 1e4}));
    o.ok = !rep.fractional_blow_up;
    o.summary = {{"n", op.size()},
                 {"q", q},
                 {"schedule", rep.reg_indices},
                 {"local_interior_min", rep.local_interior_min},
                 {"fractional_interior_min", rep.fractional_interior_min},
                 {"local_growth", rep.local_growth},
                 {"fractional_last_change", rep.fractional_last_change}};
    ctx.columns("contrast.csv", {"n_reg", "local_interior_min", "fractional_interior_min"},
                {rep.reg_indices, rep.local_interior_min, rep.fractional_interior_min});
    return o;
}

Outcome run_superlinear(const Context& ctx) {
    Outcome o;
    const double q = require(ctx.cfg.params.q, "params.q");
    const auto op = ctx.op(ctx.cfg.sizes.back());
    const auto rep = fraclab::apriori_sweep(op, q, schedule_or(ctx, {1, 10, 100, 1000}));
    const double el = *std::max_element(rep.el_residuals.begin(), rep.el_residuals.end());
    bool hardy = true;
    for (double v : rep.sup_pow) hardy = hardy && v >= rep.hardy;
    o.ok = el <= 1e-8 && hardy;
    o.summary = {{"n", op.size()},
                 {"q", q},
                 {"schedule", rep.reg_indices},
                 {"sup_norms", rep.sup_norms},
                 {"sup_pow_q_minus_1", rep.sup_pow},
                 {"discrete_hardy_constant", rep.hardy},
                 {"el_residuals", rep.el_residuals},
                 {"mp_levels", rep.mp_levels},
                 {"argmax_distance", rep.argmax_distance},
                 {"sup_last_change", rep.last_change}};
    ctx.columns("superlinear.csv", {"n_reg", "sup_norm", "el_residual", "mp_level"},
                {rep.reg_indices, rep.sup_norms, rep.el_residuals, rep.mp_levels});
    return o;
}

Outcome run_critical(const Context& ctx) {
    Outcome o;
    if (ctx.cfg.kind != fraclab::DomainKind::RadialBall) throw fraclab::ConfigError("critical requires radial geometry", "");
    ctx.cfg.params.require_sobolev();
    const int n0 = ctx.cfg.sizes.back();
    const double R0 = ctx.cfg.R();
    std::vector<fraclab::CriticalReport> reps;
    ojson runs = ojson::array();
    for (double R : ctx.cfg.radii) {
        const int n = std::max(8, static_cast<int>(std::lround((n0 + 1) * R / R0)) - 1);
        const auto op = ctx.op(n, R);
        reps.push_back(fraclab::critical_SR(op));
        const auto& r = reps.back();
        o.ok = o.ok && r.S_R > 0.0;
        runs.push_back({{"R", R}, {"n", n}, {"S_R", r.S_R}, {"el_residual", r.el_residual},
                        {"concentration_fraction", r.concentration_fraction},
                        {"radial_bound_const", r.radial_bound_const}});
        ctx.field("critical_minimizer_R" + std::to_string(R) + ".csv", op, r.minimizer);
    }
    double worst = 0.0;
    for (std::size_t k = 1; k < reps.size(); ++k)
        worst = std::max(worst, fraclab::scaling_check(reps[0], reps[k], ctx.cfg.params.s, ctx.cfg.N));
    o.ok = o.ok && worst <= 0.03;
    o.summary["runs"] = runs;
    o.summary["scaling_error"] = worst;
    return o;
}

Outcome run_singular(const Context& ctx) {
    Outcome o;
    const double sigma = require(ctx.cfg.params.sigma, "params.sigma");
    const double alpha = ctx.cfg.params.alpha.value_or(0.0);
    const auto op = ctx.op(ctx.cfg.sizes.back());
    fraclab::SingularOptions opt;
    opt.betas = ctx.cfg.betas;
    for (double b : opt.betas)
        if (!(b > 0.0 && b < 2.0 * ctx.cfg.params.s)) throw fraclab::ConfigError("beta in (0, 2s)", std::to_string(b));
    const auto run = fraclab::singular_solve(op, sigma, alpha, fraclab::FSpec::constant(1.0),
                                             schedule_or(ctx, fraclab::acceptance::kSingularSchedule), opt);
    bool floor = true;
    for (double m : run.interior_min) floor = floor && m >= run.interior_min.front();
    o.ok = run.monotone && floor;
    o.summary = {{"n", op.size()},
                 {"sigma", sigma},
                 {"alpha", alpha},
                 {"schedule", run.reg_indices},
                 {"monotone", run.monotone},
                 {"interior_min", run.interior_min},
                 {"power_seminorm", run.power_seminorm},
                 {"residuals", run.residuals},
                 {"newton_iterations", run.newton_iters},
                 {"kato_defect", fraclab::kato_defect(op, run.fields.back(), sigma)}};
    ojson wp = ojson::object();
    std::vector<std::string> header{"n_reg", "interior_min", "power_seminorm"};
    std::vector<std::vector<double>> cols{run.reg_indices, run.interior_min, run.power_seminorm};
    for (const auto& [b, v] : run.weighted_power) {
        std::ostringstream key;
        key << b;
        wp[key.str()] = v;
        header.push_back("weighted_power_beta_" + key.str());
        cols.push_back(v);
    }
    o.summary["weighted_power"] = wp;
    ctx.columns("singular.csv", header, cols);
    ctx.field("singular_last.csv", op, run.fields.back());
    return o;
}

Outcome run_acceptance(const Context& ctx) {
    Outcome o;
    const auto suite = fraclab::acceptance::run_suite(std::cout);
    o.summary = suite.report;
    o.summary["known_infeasible"] = fraclab::acceptance::kKnownInfeasible;
    o.ok = suite.all_passed;
    return o;
}

void emit_error(const std::string& kind, const std::string& constraint, const std::string& message) {
    ojson e{{"error", kind}, {"constraint", constraint}, {"message", message}};
    std::cerr << e.dump() << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fractional Laplacian experiments on intervals and balls"};
    app.require_subcommand(1);
    std::string config_path;
    std::string out_dir = ".";
    const std::vector<std::string> names = {"constants", "torsion",     "auxiliary", "eigen",    "hardy",     "sublinear",
                                            "contrast",  "superlinear", "critical",  "singular", "acceptance"};
    for (const auto& name : names) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "experiment configuration (JSON)")->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir, "output directory");
    }
    CLI11_PARSE(app, argc, argv);
    const std::string sub = app.get_subcommands().front()->get_name();

    Context ctx;
    ctx.out = out_dir;
    if (const char* c = std::getenv("FRACLAB_CACHE_DIR")) ctx.cache_dir = c;
    try {
        if (sub != "acceptance") {
            if (config_path.empty()) throw fraclab::ConfigError("--config required", "");
            std::ifstream in(config_path);
            nlohmann::json doc;
            try {
                doc = nlohmann::json::parse(in);
            } catch (const nlohmann::json::parse_error& e) {
                throw fraclab::ConfigError("config must be valid JSON", e.what());
            }
            ctx.cfg = fraclab::parse_config(doc);
        } else {
            ctx.cfg.write_csv = false;
        }
        fs::create_directories(ctx.out);
        if (!ctx.cache_dir.empty()) fs::create_directories(ctx.cache_dir);
    } catch (const fraclab::ConfigError& e) {
        emit_error("config", e.constraint, e.what());
        return 2;
    } catch (const fraclab::DomainError& e) {
        emit_error("config", e.what(), e.what());
        return 2;
    } catch (const nlohmann::json::exception& e) {
        emit_error("config", "config field types", e.what());
        return 2;
    } catch (const std::exception& e) {
        emit_error("io", "", e.what());
        return 2;
    }

    Outcome res;
    try {
        if (sub == "constants") res = run_constants(ctx);
        else if (sub == "torsion") res = run_linear_solve(ctx, false);
        else if (sub == "auxiliary") res = run_linear_solve(ctx, true);
        else if (sub == "eigen") res = run_eigen(ctx);
        else if (sub == "hardy") res = run_hardy(ctx);
        else if (sub == "sublinear") res = run_sublinear(ctx);
        else if (sub == "contrast") res = run_contrast(ctx);
        else if (sub == "superlinear") res = run_superlinear(ctx);
        else if (sub == "critical") res = run_critical(ctx);
        else if (sub == "singular") res = run_singular(ctx);
        else res = run_acceptance(ctx);
    } catch (const fraclab::ConfigError& e) {
        emit_error("config", e.constraint, e.what());
        return 2;
    } catch (const fraclab::DomainError& e) {
        emit_error("precondition", e.what(), e.what());
        return 2;
    } catch (const std::exception& e) {
        emit_error("runtime", "", e.what());
        return 3;
    }

    ojson doc;
    doc["schema_version"] = fraclab::kReportSchemaVersion;
    doc["subcommand"] = sub;
    doc["checks_passed"] = res.ok;
    doc["result"] = res.summary;
    const std::string file = sub == "acceptance" ? "acceptance_report.json" : sub + ".json";
    if (ctx.cfg.write_json || sub == "acceptance") std::ofstream(ctx.out / file) << doc.dump(2) << '\n';
    std::cout << doc.dump(2) << std::endl;
    return res.ok ? 0 : 1;
}
