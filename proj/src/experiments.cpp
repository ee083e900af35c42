#include "ultra/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "ultra/fourier.hpp"
#include "ultra/integrate.hpp"
#include "ultra/io.hpp"
#include "ultra/multidim.hpp"
#include "ultra/operators.hpp"

namespace ultra {

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (value == 0.0) return "0";  // folds -0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", value);
    return buf;
}

double tolerance_from_env(double fallback) {
    const char* text = std::getenv("ULTRA_TOL");
    if (!text || !*text) return fallback;
    char* end = nullptr;
    double value = std::strtod(text, &end);
    if (end == text || *end != '\0' || !(value > 0))
        throw ConfigError(std::string("ULTRA_TOL must be a positive decimal, got '") + text + "'");
    return value;
}

const char* formula_name(Formula f) {
    switch (f) {
        case Formula::PowerOverBall: return "power_over_ball";
        case Formula::ShiftedPowerOverSphere: return "shifted_power_over_sphere";
        case Formula::LogOverBall: return "log_over_ball";
        case Formula::ShiftedLogOverSphere: return "shifted_log_over_sphere";
    }
    return "?";
}

namespace {

bool is_log(Formula f) { return f == Formula::LogOverBall || f == Formula::ShiftedLogOverSphere; }
bool is_sphere(Formula f) { return f == Formula::ShiftedPowerOverSphere || f == Formula::ShiftedLogOverSphere; }

/// A point with |a| = q^n.
Point sphere_anchor(const FieldParams& fp, int n) { return Point::unit(fp, -n); }

}  // namespace

Scalar closed_form(Formula f, const FieldParams& fp, const Exponent& alpha, int n) {
    switch (f) {
        case Formula::PowerOverBall: return power_over_ball(fp, alpha, n);
        case Formula::ShiftedPowerOverSphere: return shifted_power_over_sphere(fp, alpha, n, sphere_anchor(fp, n));
        case Formula::LogOverBall: return Scalar(log_over_ball(fp, n));
        case Formula::ShiftedLogOverSphere: return Scalar(shifted_log_over_sphere(fp, n, sphere_anchor(fp, n)));
    }
    throw std::logic_error("closed_form: unknown formula");
}

OracleResult formula_oracle(Formula f, const FieldParams& fp, const Exponent& alpha, int n, int resolution, Exec exec) {
    const Point singular = is_sphere(f) ? sphere_anchor(fp, n) : Point::zero(fp);
    const Scalar shell(Rational(1) - Rational(1, static_cast<unsigned long>(fp.q)));
    const Scalar lq(log_q(fp));
    const bool log = is_log(f);
    Sampler sampler = [&](const Point& x) -> Scalar {
        AbsValue a = (x - singular).abs(fp);
        if (log) return Scalar(ExactScalar::log_q(fp.q, a.exponent));
        return q_power(fp, alpha - Exponent(1), a.exponent);
    };
    OracleTail tail;
    tail.singular = {singular};
    // the ball of radius q^-level around the singular point, by shells
    tail.integral = [&](const Point&, int level) -> Scalar {
        if (log) return -(shell * lq * weighted_geometric_tail(fp, Exponent(1), level));
        return shell * geometric_tail(fp, alpha, level);
    };
    OracleOptions options;
    options.resolution = resolution;
    options.exec = exec;
    return brute_force_oracle(fp, sampler, is_sphere(f) ? Region::Sphere : Region::Ball, Point::zero(fp), -n, options,
                              tail);
}

namespace {

struct Context {
    const ExperimentConfig& config;
    Report report;

    double tol(double fallback) const {
        if (config.tolerance) return *config.tolerance;
        return tolerance_from_env(fallback);
    }

    void fail(const std::string& identity, const std::string& lhs, const std::string& rhs) {
        report.failures.push_back(identity + ": " + lhs + " vs " + rhs);
    }
};

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& s : parts) {
        if (!out.empty()) out += "; ";
        out += s;
    }
    return out;
}

std::string exact_text(const Scalar& s) { return s.is_exact() ? s.exact().str() : ""; }

FieldParams field_of(const ExperimentConfig& c) {
    try {
        return FieldParams::make(c.p, c.degree);
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
}

const Exponent& require_alpha(const ExperimentConfig& c) {
    if (!c.alpha) throw ConfigError(c.command + ": --alpha is required");
    if (!(*c.alpha > Exponent(0))) throw ConfigError(c.command + ": --alpha must be positive");
    return *c.alpha;
}

TestFunction load_function(const ExperimentConfig& c) {
    if (c.function_path.empty()) throw ConfigError(c.command + ": --fn is required");
    try {
        return parse_function_file(c.function_path);
    } catch (const FileFormatError& e) {
        throw ConfigError(e.what());
    }
}

/// Field given by --p/--deg must match the function file.
void require_field(const ExperimentConfig& c, const TestFunction& f) {
    if (f.field().p != c.p || f.field().n != c.degree)
        throw ConfigError("function file is over p=" + std::to_string(f.field().p) + ", degree " +
                          std::to_string(f.field().n) + " but --p " + std::to_string(c.p) + " --deg " +
                          std::to_string(c.degree) + " was given");
}

double max_abs_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, (a[i] - b[i]).abs());
    return worst;
}

// ------------------------------------------------------------------ integrate

void run_integrate(Context& ctx) {
    const auto& c = ctx.config;
    const FieldParams fp = field_of(c);
    const Exponent& alpha = require_alpha(c);
    if (c.levels_lo > c.levels_hi) throw ConfigError("integrate: empty --levels range");
    const double tol = ctx.tol(1e-8);
    ctx.report.columns = {"formula", "n", "closed", "closed_exact", "oracle", "tail_bound", "cells", "delta", "match"};
    for (Formula f : {Formula::PowerOverBall, Formula::ShiftedPowerOverSphere, Formula::LogOverBall,
                      Formula::ShiftedLogOverSphere}) {
        for (int n = c.levels_lo; n <= c.levels_hi; ++n) {
            if (c.resolution <= -n) throw ConfigError("integrate: --resolution must exceed every region level");
            Scalar closed = closed_form(f, fp, alpha, n);
            OracleResult oracle = formula_oracle(f, fp, alpha, n, c.resolution, c.exec);
            Scalar total = oracle.total();
            const double a = closed.to_double();
            const double b = total.to_double();
            bool match = (closed.is_exact() && total.is_exact()) ? closed == total : close(a, b, tol);
            if (!match)
                ctx.fail(std::string(formula_name(f)) + " at n=" + std::to_string(n), "closed " + format_number(a),
                         "oracle " + format_number(b));
            ctx.report.rows.push_back({formula_name(f), static_cast<long>(n), a, exact_text(closed), b,
                                       oracle.tail_bound, static_cast<long>(oracle.cells), std::abs(a - b), match});
        }
    }
}

// --------------------------------------------------------------------- kernel

void run_kernel(Context& ctx) {
    const auto& c = ctx.config;
    const OperatorParams params = OperatorParams::make(field_of(c), require_alpha(c));
    if (c.shells_lo > c.shells_hi) throw ConfigError("kernel: empty --shells range");
    const double tol = ctx.tol(kDefaultTolerance);
    const double norm_tol = ctx.tol(1e-12);
    ctx.report.columns = {"j", "R", "R_exact", "R1", "R_oracle", "delta", "warnings"};
    const Constants k = constants(params);
    const bool positive_regime = !(params.gamma > Exponent(1));
    double min_r1 = std::numeric_limits<double>::infinity();
    for (int j = c.shells_lo; j <= c.shells_hi; ++j) {
        Scalar r = kernel_R(params, j);
        Scalar r1 = k.cd * r;
        std::vector<std::string> warn;
        Cell oracle_cell = std::string();
        Cell delta_cell = std::string();
        if (c.check_integral) {
            double oracle = kernel_R_oracle(params, j, c.oracle_depth);
            double delta = std::abs(oracle - r.to_double());
            oracle_cell = oracle;
            delta_cell = delta;
            if (!(delta < tol))
                ctx.fail("kernel closed form vs integral at j=" + std::to_string(j), format_number(r.to_double()),
                         format_number(oracle));
        }
        if (j <= 0 && !r.is_zero()) ctx.fail("kernel zero branch at j=" + std::to_string(j), format_number(r.to_double()), "0");
        if (j >= 1) {
            min_r1 = std::min(min_r1, r1.to_double());
            if (positive_regime && !(r1.to_double() > 0))
                ctx.fail("kernel positivity at j=" + std::to_string(j), format_number(r1.to_double()), "> 0");
        }
        ctx.report.rows.push_back({static_cast<long>(j), r.to_double(), exact_text(r), r1.to_double(), oracle_cell,
                                   delta_cell, join(warn)});
    }
    KernelShellTable table = kernel_table(params, std::max(1, c.shells_hi));
    const Scalar& norm = table.normalization;
    bool norm_ok = norm.is_exact() ? norm == Scalar(1) : close(norm.to_double(), 1.0, norm_tol);
    if (!norm_ok) ctx.fail("kernel normalization", format_number(norm.to_double()), "1");
    std::vector<std::string> warn;
    if (!positive_regime) warn.push_back("gamma > 1: min R1 over listed shells = " + format_number(min_r1));
    if (!norm.is_exact()) warn.push_back("float path");
    ctx.report.rows.push_back({std::string("sum"), std::string(), std::string(), norm.to_double(), std::string(),
                               std::abs(norm.to_double() - 1.0), join(warn)});
}

// ---------------------------------------------------------------------- apply

void run_apply(Context& ctx) {
    const auto& c = ctx.config;
    const OperatorParams params = OperatorParams::make(field_of(c), require_alpha(c));
    const TestFunction phi = load_function(c);
    require_field(c, phi);
    const FieldParams& fp = phi.field();
    const int k = phi.constancy_level();
    ctx.report.columns = {"index", "x", "re", "im", "exact", "warnings"};

    auto emit = [&](const std::vector<Complex>& values, int window) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            Point x = coset_representative(i, fp, window, k);
            ctx.report.rows.push_back({static_cast<long>(i), x.str(), values[i].re.to_double(),
                                       values[i].im.to_double(), values[i].is_exact(), std::string()});
        }
    };

    if (c.op == "riesz") {
        ExtendedFunction u = riesz_potential(params, phi, c.exec);
        emit(u.core().values(), u.window_level());
        const Tail& t = u.tail();
        std::string text = t.kind == Tail::Kind::Log
                               ? "c0 + c1 ln|x|, c0 = " + t.c0.str() + ", c1 = " + t.c1.str()
                               : "c |x|^s, c = " + t.c1.str() + ", s = " + t.s.str();
        ctx.report.rows.push_back({std::string("tail"), "|x| > q^" + std::to_string(-u.window_level()), std::string(),
                                   std::string(), u.core().is_exact(), text});
        return;
    }
    const int window = c.window.value_or(phi.support_level() - 1);
    if (window > phi.support_level()) throw ConfigError("apply: --window must contain the support of the input");
    if (window > k) throw ConfigError("apply: --window must not be finer than the constancy level");
    const ExtendedFunction u(phi);
    std::vector<Complex> values;
    if (c.op == "vladimirov") {
        values = tabulate<Complex>(
            coset_count(fp, window, k),
            [&](std::size_t i) { return vladimirov_hypersingular(params, u, coset_representative(i, fp, window, k)); },
            c.exec);
    } else if (c.op == "truncated") {
        if (c.nu_min <= 0) throw ConfigError("apply truncated: --nu must be a positive integer");
        values = tabulate<Complex>(
            coset_count(fp, window, k),
            [&](std::size_t i) {
                return truncated_vladimirov(params, c.nu_min, u, coset_representative(i, fp, window, k));
            },
            c.exec);
    } else if (c.op == "multiplier") {
        values = multiplier_vladimirov_table(params, phi, window, k, c.exec);
    } else {
        throw ConfigError("apply: --op must be one of riesz, vladimirov, truncated, multiplier");
    }
    emit(values, window);
}

// --------------------------------------------------------------------- invert

void run_invert(Context& ctx) {
    const auto& c = ctx.config;
    const OperatorParams params = OperatorParams::make(field_of(c), require_alpha(c));
    const TestFunction phi = load_function(c);
    require_field(c, phi);
    if (!(c.lp >= 1)) throw ConfigError("invert: --lp must be >= 1");
    if (c.nu_min <= 0 || c.nu_min > c.nu_max) throw ConfigError("invert: need 1 <= nu-min <= nu-max");
    if (params.gamma > Exponent(1) && !phi.integral().is_zero())
        throw ConfigError("invert: gamma > 1 needs a mean-zero input (use a Lizorkin function)");
    const double zero_tol = ctx.tol(1e-12);
    const double bound_tol = ctx.tol(kDefaultTolerance);
    const int k = phi.constancy_level();
    ctx.report.columns = {"nu", "residual", "bound", "exact_zero", "regime", "warnings"};
    for (int nu = c.nu_min; nu <= c.nu_max; ++nu) {
        ResidualReport r;
        try {
            r = inversion_residual(params, c.lp, phi, nu, c.exec);
        } catch (const DivergentIntegral& e) {
            throw ConfigError(e.what());
        } catch (const std::domain_error& e) {
            throw ConfigError(e.what());
        }
        const bool recovery = nu >= k - 1;
        if (recovery && !(r.value <= zero_tol))
            ctx.fail("exact recovery at nu=" + std::to_string(nu), "residual " + format_number(r.value), "0");
        if (!recovery && !(r.value <= r.bound + bound_tol))
            ctx.fail("Minkowski bound at nu=" + std::to_string(nu), "residual " + format_number(r.value),
                     "bound " + format_number(r.bound));
        ctx.report.rows.push_back({static_cast<long>(nu), r.value, r.bound, r.exact_zero,
                                   std::string(recovery ? "exact_recovery" : "bounded"), join(r.warnings)});
    }
}

// -------------------------------------------------------------- fourier-check

void run_fourier_check(Context& ctx) {
    const auto& c = ctx.config;
    const TestFunction phi = load_function(c);
    require_field(c, phi);
    const FieldParams& fp = phi.field();
    ctx.report.columns = {"check", "lhs", "rhs", "delta", "pass"};
    auto check = [&](const std::string& name, double lhs, double rhs, double delta, double tol) {
        bool pass = delta <= tol;
        if (!pass) ctx.fail(name, format_number(lhs), format_number(rhs));
        ctx.report.rows.push_back({name, lhs, rhs, delta, pass});
    };

    TestFunction ft = fourier_transform(phi, false, c.exec);
    double n_phi = lp_norm(ExtendedFunction(phi), 2.0, c.exec);
    double n_ft = lp_norm(ExtendedFunction(ft), 2.0, c.exec);
    check("plancherel", n_phi, n_ft, std::abs(n_phi - n_ft), ctx.tol(kDefaultTolerance));

    TestFunction back = fourier_transform(ft, true, c.exec);
    check("inverse_transform", 0.0, 0.0, max_abs_diff(back.values(), phi.values()), ctx.tol(1e-12));

    if (c.alpha) {
        const OperatorParams params = OperatorParams::make(fp, require_alpha(c));
        const int window = c.window.value_or(phi.support_level() - 1);
        const int k = phi.constancy_level();
        if (window > phi.support_level() || window > k)
            throw ConfigError("fourier-check: --window must contain the support and be no finer than the constancy level");
        std::vector<Complex> mult = multiplier_vladimirov_table(params, phi, window, k, c.exec);
        const ExtendedFunction u(phi);
        std::vector<Complex> hyp = tabulate<Complex>(
            mult.size(),
            [&](std::size_t i) { return vladimirov_hypersingular(params, u, coset_representative(i, fp, window, k)); },
            c.exec);
        double worst = max_abs_diff(mult, hyp);
        double scale = 0.0;
        for (const auto& v : hyp) scale = std::max(scale, v.abs());
        check("multiplier_vs_hypersingular", scale, scale, worst, ctx.tol(1e-9) * std::max(1.0, scale));
    }
}

// ------------------------------------------------------------- multidim-check

void run_multidim_check(Context& ctx) {
    const auto& c = ctx.config;
    const Exponent& alpha = require_alpha(c);
    const TestFunction phi = load_function(c);
    require_field(c, phi);
    const DimensionBridge bridge = DimensionBridge::make(c.p, c.degree, alpha);
    const FieldParams& fp = bridge.ext;
    const int window = c.window.value_or(phi.support_level() - 1);
    const int k = phi.constancy_level();
    if (window > phi.support_level() || window > k)
        throw ConfigError("multidim-check: --window must contain the support and be no finer than the constancy level");
    const double tol = ctx.tol(kDefaultTolerance);
    ctx.report.columns = {"index", "x", "direct_re", "direct_im", "extension_re", "extension_im", "delta", "exact_match"};
    const std::size_t count = coset_count(fp, window, k);
    struct Pair {
        Complex direct;
        Complex via;
    };
    std::vector<Pair> values = tabulate<Pair>(
        count,
        [&](std::size_t i) {
            Point x = coset_representative(i, fp, window, k);
            return Pair{taibleson_direct(bridge, phi, x, Exec::Serial), taibleson_via_extension(bridge, phi, x)};
        },
        c.exec);
    double worst = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const auto& [direct, via] = values[i];
        double delta = (direct - via).abs();
        bool exact = direct.is_exact() && via.is_exact();
        bool match = exact ? direct == via : delta <= tol * std::max(1.0, via.abs());
        if (!match) ctx.fail("taibleson direct vs extension at coset " + std::to_string(i), direct.str(), via.str());
        worst = std::max(worst, delta);
        ctx.report.rows.push_back({static_cast<long>(i), coset_representative(i, fp, window, k).str(),
                                   direct.re.to_double(), direct.im.to_double(), via.re.to_double(),
                                   via.im.to_double(), delta, exact ? Cell(match) : Cell(std::string())});
    }
    ctx.report.rows.push_back({std::string("max"), std::string(), std::string(), std::string(), std::string(),
                               std::string(), worst, std::string()});
}

}  // namespace

Report run_experiment(const ExperimentConfig& config) {
    Context ctx{config, {}};
    try {
        if (config.command == "integrate") run_integrate(ctx);
        else if (config.command == "kernel") run_kernel(ctx);
        else if (config.command == "apply") run_apply(ctx);
        else if (config.command == "invert") run_invert(ctx);
        else if (config.command == "fourier-check") run_fourier_check(ctx);
        else if (config.command == "multidim-check") run_multidim_check(ctx);
        else throw ConfigError("unknown subcommand '" + config.command + "'");
    } catch (const DivergentIntegral& e) {
        throw ConfigError(e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return std::move(ctx.report);
}

namespace {

std::string cell_text(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::string>) return v;
            else if constexpr (std::is_same_v<T, double>) return format_number(v);
            else if constexpr (std::is_same_v<T, long>) return std::to_string(v);
            else return v ? "true" : "false";
        },
        cell);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

std::string json_cell(const Cell& cell) {
    if (const auto* d = std::get_if<double>(&cell)) {
        if (!std::isfinite(*d)) return nlohmann::json(format_number(*d)).dump();
        return format_number(*d);
    }
    if (const auto* s = std::get_if<std::string>(&cell)) return nlohmann::json(*s).dump();
    return cell_text(cell);
}

}  // namespace

std::string to_csv(const Report& report) {
    std::ostringstream out;
    for (std::size_t i = 0; i < report.columns.size(); ++i) out << (i ? "," : "") << csv_field(report.columns[i]);
    out << "\n";
    for (const auto& row : report.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(cell_text(row[i]));
        out << "\n";
    }
    return out.str();
}

std::string to_json(const Report& report) {
    std::ostringstream out;
    out << "{\n  \"columns\": " << nlohmann::json(report.columns).dump() << ",\n  \"rows\": [";
    for (std::size_t r = 0; r < report.rows.size(); ++r) {
        out << (r ? ",\n    {" : "\n    {");
        for (std::size_t i = 0; i < report.rows[r].size(); ++i)
            out << (i ? ", " : "") << nlohmann::json(report.columns[i]).dump() << ": " << json_cell(report.rows[r][i]);
        out << "}";
    }
    out << (report.rows.empty() ? "],\n" : "\n  ],\n");
    out << "  \"failures\": " << nlohmann::json(report.failures).dump() << "\n}\n";
    return out.str();
}

}  // namespace ultra
