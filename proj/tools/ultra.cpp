#include <cstdio>
#include <iostream>
#include <regex>

#include <CLI11.hpp>

#include "ultra/experiments.hpp"

namespace {

/// "lo..hi" or a single integer.
std::pair<int, int> parse_range(const std::string& text, const std::string& flag) {
    static const std::regex pattern(R"(^\s*(-?\d+)\s*(?:\.\.\s*(-?\d+)\s*)?$)");
    std::smatch m;
    if (!std::regex_match(text, m, pattern))
        throw ultra::ConfigError(flag + " expects lo..hi, got '" + text + "'");
    int lo = std::stoi(m[1].str());
    int hi = m[2].matched ? std::stoi(m[2].str()) : lo;
    return {lo, hi};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Vladimirov operators, Riesz potentials and their inversion on local fields"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    ultra::ExperimentConfig config;
    std::string alpha_text, shells_text = "-3..6", levels_text = "-2..2", format = "csv", exec = "parallel";
    std::optional<int> nu;
    std::optional<double> tol;
    std::optional<int> window;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--p", config.p, "prime p of the base field")->capture_default_str();
        sub->add_option("--deg", config.degree, "degree n of the unramified extension (q = p^n)")->capture_default_str();
        sub->add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
        sub->add_option("--exec", exec, "serial reference or OpenMP kernels")
            ->check(CLI::IsMember({"serial", "parallel"}))
            ->capture_default_str();
        sub->add_option("--tol", tol, "float tolerance override (also ULTRA_TOL)");
    };
    auto with_alpha = [&](CLI::App* sub, bool required) {
        auto* opt = sub->add_option("--alpha", alpha_text, "order alpha > 0: integer, decimal or fraction");
        if (required) opt->required();
    };
    auto with_fn = [&](CLI::App* sub) { sub->add_option("--fn", config.function_path, "function file (JSON)")->required(); };
    auto with_window = [&](CLI::App* sub) {
        sub->add_option("--window", window, "evaluation window level (default: input support dilated by one level)");
    };

    auto* integrate = app.add_subcommand("integrate", "closed-form Haar integrals against coset sums");
    common(integrate);
    with_alpha(integrate, true);
    integrate->add_option("--levels", levels_text, "radii q^n for n in lo..hi")->capture_default_str();
    integrate->add_option("--resolution", config.resolution, "oracle resolution level")->capture_default_str();

    auto* kernel = app.add_subcommand("kernel", "averaging kernel R, R1 by shell and its normalization");
    common(kernel);
    with_alpha(kernel, true);
    kernel->add_option("--shells", shells_text, "shells j in lo..hi, |tau| = q^-j")->capture_default_str();
    kernel->add_flag("--check-integral", config.check_integral, "compare with the defining integral");
    kernel->add_option("--depth", config.oracle_depth, "oracle depth below each shell")->capture_default_str();

    auto* apply = app.add_subcommand("apply", "apply an operator to a function file");
    common(apply);
    with_alpha(apply, true);
    with_fn(apply);
    with_window(apply);
    apply->add_option("--op", config.op, "operator")
        ->required()
        ->check(CLI::IsMember({"riesz", "vladimirov", "truncated", "multiplier"}));
    apply->add_option("--nu", nu, "truncation eps = q^-nu (truncated only)");

    auto* invert = app.add_subcommand("invert", "inversion residuals ||D_eps D^-alpha phi - phi||_p");
    common(invert);
    with_alpha(invert, true);
    with_fn(invert);
    invert->add_option("--lp", config.lp, "L^p exponent p >= 1")->capture_default_str();
    invert->add_option("--nu-min", config.nu_min, "smallest nu")->capture_default_str();
    invert->add_option("--nu-max", config.nu_max, "largest nu")->capture_default_str();

    auto* fourier = app.add_subcommand("fourier-check", "Plancherel, inversion and the multiplier definition");
    common(fourier);
    with_alpha(fourier, false);
    with_fn(fourier);
    with_window(fourier);

    auto* multidim = app.add_subcommand("multidim-check", "Taibleson operator on K^n against the extension");
    common(multidim);
    with_alpha(multidim, true);
    with_fn(multidim);
    with_window(multidim);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        config.command = app.get_subcommands().front()->get_name();
        if (!alpha_text.empty()) {
            try {
                config.alpha = ultra::Exponent::parse(alpha_text);
            } catch (const std::exception& e) {
                throw ultra::ConfigError("--alpha: " + std::string(e.what()));
            }
        }
        std::tie(config.shells_lo, config.shells_hi) = parse_range(shells_text, "--shells");
        std::tie(config.levels_lo, config.levels_hi) = parse_range(levels_text, "--levels");
        if (nu) {
            if (config.op != "truncated") throw ultra::ConfigError("--nu only applies to --op truncated");
            config.nu_min = config.nu_max = *nu;
        } else if (config.command == "apply" && config.op == "truncated") {
            throw ultra::ConfigError("apply --op truncated needs --nu");
        }
        config.tolerance = tol;
        config.window = window;
        config.exec = exec == "serial" ? ultra::Exec::Serial : ultra::Exec::Parallel;

        ultra::Report report = ultra::run_experiment(config);
        std::cout << (format == "json" ? ultra::to_json(report) : ultra::to_csv(report));
        for (const auto& f : report.failures) std::cerr << "assertion failed: " << f << "\n";
        return report.passed() ? 0 : 1;
    } catch (const ultra::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
