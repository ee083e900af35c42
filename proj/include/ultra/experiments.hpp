#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ultra/field.hpp"
#include "ultra/integrate.hpp"
#include "ultra/numerics.hpp"
#include "ultra/parallel.hpp"

namespace ultra {

/// Invalid flag combination or unreadable input; maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    std::string command;  // integrate | kernel | apply | invert | fourier-check | multidim-check
    std::uint32_t p = 2;
    std::uint32_t degree = 1;
    std::optional<Exponent> alpha;
    double lp = 1.0;
    int nu_min = 1;
    int nu_max = 4;
    std::string function_path;
    std::string op;  // apply: riesz | vladimirov | truncated | multiplier
    int shells_lo = -3;
    int shells_hi = 6;
    bool check_integral = false;
    int levels_lo = -2;
    int levels_hi = 2;
    int resolution = 12;   // integrate: oracle resolution level
    int oracle_depth = 30; // kernel: oracle depth below each shell
    std::optional<int> window;  // apply / fourier-check / multidim-check: evaluation window level
    std::optional<double> tolerance;
    Exec exec = Exec::Parallel;
};

/// One cell of a report row.
using Cell = std::variant<std::string, double, long, bool>;

struct Report {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::string> failures;  // violated identities with both computed values

    bool passed() const { return failures.empty(); }
};

/// The four closed-form Haar integrals checked by `integrate`.
enum class Formula { PowerOverBall, ShiftedPowerOverSphere, LogOverBall, ShiftedLogOverSphere };

const char* formula_name(Formula f);

/// Closed form at radius q^n; alpha is ignored by the log formulas.
Scalar closed_form(Formula f, const FieldParams& fp, const Exponent& alpha, int n);

/// Coset sum of the same integrand over the ball / sphere of radius q^n,
/// refined down to `resolution` around the singular point.
OracleResult formula_oracle(Formula f, const FieldParams& fp, const Exponent& alpha, int n, int resolution,
                            Exec exec = Exec::Parallel);

/// Runs one subcommand. Throws ConfigError for invalid configurations.
Report run_experiment(const ExperimentConfig& config);

/// Numbers with 15 significant digits; header row first.
std::string to_csv(const Report& report);
/// {"columns": [...], "rows": [{column: value, ...}, ...], "failures": [...]}
std::string to_json(const Report& report);

std::string format_number(double value);

/// ULTRA_TOL when set to a positive decimal, otherwise `fallback`.
double tolerance_from_env(double fallback);

}  // namespace ultra
