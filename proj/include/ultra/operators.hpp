#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ultra/functions.hpp"
#include "ultra/integrate.hpp"
#include "ultra/params.hpp"

namespace ultra {

struct Constants {
    Scalar c;   // hypersingular constant (1 - q^g) / (1 - q^(-g-1))
    Scalar d;   // Riesz constant; carries 1/ln q in the logarithmic case
    Scalar cd;  // c * d
    /// (1 - q^-g)^2 / (q^(-2g-1) - q^-g - q^(-g-2) + q^-1), absent when gamma = 1.
    std::optional<Scalar> cd_product_form;
};

/// Constants at (q, gamma). Throws std::logic_error if c*d disagrees with
/// its product form.
Constants constants(const OperatorParams& params);

/// D^-alpha phi: d int |x - y|^(gamma - 1) phi(y) dy, or d1 int ln|x - y| phi(y) dy
/// when gamma = 1. The core lives on phi's support window at phi's constancy
/// level; the tail is d (int phi) |x|^(gamma - 1), resp. d1 (int phi) ln|x|.
ExtendedFunction riesz_potential(const OperatorParams& params, const TestFunction& phi, Exec exec = Exec::Parallel);

/// D^alpha u(x) = c int |y|^(-gamma-1) (u(x - y) - u(x)) dy, exact shell sum.
/// Shells inside x's constancy ball vanish identically, so this is also the
/// principal value.
Complex vladimirov_hypersingular(const OperatorParams& params, const ExtendedFunction& u, const Point& x);

/// D^alpha_eps u(x) with eps = q^-nu: the same integral over |y - x| >= eps.
Complex truncated_vladimirov(const OperatorParams& params, int nu, const ExtendedFunction& u, const Point& x);

/// Averaging kernel R on the shell |tau| = q^-j (zero for j <= 0).
Scalar kernel_R(const OperatorParams& params, int j);

struct KernelShellTable {
    OperatorParams params;
    Scalar cd;
    std::vector<Scalar> R;       // R[j - 1] for j = 1..j_max
    std::vector<Scalar> R1;      // c d R
    std::vector<Rational> measure;  // Haar measure of the shell
    Scalar partial_sum;          // sum_{j <= j_max} R1 * measure
    Scalar normalization;        // sum over all shells, closed form
    double min_R1 = 0.0;
};

KernelShellTable kernel_table(const OperatorParams& params, int j_max);

/// R on the shell j from its defining integral over |xi| >= 1, summed shell by
/// shell with a coset walk on the shell that meets -tau; independent of kernel_R.
double kernel_R_oracle(const OperatorParams& params, int j, int depth = 30);

/// c d int R(tau) phi(x - sigma tau) d tau with sigma = p^nu.
Complex averaging_apply(const OperatorParams& params, int nu, const TestFunction& phi, const Point& x);

/// Right-hand side of the Minkowski bound: int |R1(tau)| omega_p(phi, sigma tau) d tau.
double minkowski_bound(const OperatorParams& params, double p, const TestFunction& phi, int nu,
                       Exec exec = Exec::Parallel);

struct ResidualReport {
    double value = 0.0;   // || D^alpha_eps D^-alpha phi - phi ||_p
    bool exact_zero = false;  // every residual cell vanished on the exact path
    double bound = 0.0;   // minkowski_bound
    std::vector<std::string> warnings;
};

/// Inversion residual via the averaging representation, on the cosets of
/// the support ball of phi widened to radius q^(-nu-1).
ResidualReport inversion_residual(const OperatorParams& params, double p, const TestFunction& phi, int nu,
                                  Exec exec = Exec::Parallel);

/// Residual table (canonical order) on the window used by inversion_residual.
TestFunction residual_function(const OperatorParams& params, const TestFunction& phi, int nu,
                               Exec exec = Exec::Parallel);

}  // namespace ultra
