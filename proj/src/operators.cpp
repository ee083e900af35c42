#include "ultra/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ultra {

namespace {

Rational q_rational(const FieldParams& fp) { return Rational(static_cast<unsigned long>(fp.q)); }

Scalar q_pow(const FieldParams& fp, int e) { return Scalar(rational_pow(q_rational(fp), e)); }

Scalar one_minus_inv_q(const FieldParams& fp) {
    return Scalar(Rational(1) - Rational(1, static_cast<unsigned long>(fp.q)));
}

RadialProfile riesz_profile(const OperatorParams& params, const Point& x) {
    if (params.log_case()) return RadialProfile::shifted(RadialProfile::log_abs(), x);
    return RadialProfile::shifted(RadialProfile::power(params.gamma - Exponent(1)), x);
}

RadialProfile hypersingular_profile(const OperatorParams& params, const Point& x) {
    return RadialProfile::shifted(RadialProfile::power(-params.gamma - Exponent(1)), x);
}

/// (1 - 1/q) / (1 - q^-gamma)
Scalar kernel_amplitude(const OperatorParams& params) {
    return one_minus_inv_q(params.fp) / (Scalar(1) - q_power(params.fp, params.gamma, -1));
}

/// sum_{j >= j0} R_j * |{|tau| = q^-j}|, j0 >= 1
Scalar kernel_mass_from(const OperatorParams& params, int j0) {
    const FieldParams& fp = params.fp;
    const Exponent one(1);
    if (params.log_case()) {
        Scalar lq(log_q(fp));
        Scalar inner = geometric_tail(fp, one, j0) / Scalar(static_cast<long>(fp.q - 1)) +
                       weighted_geometric_tail(fp, one, j0);
        return one_minus_inv_q(fp) * lq * inner;
    }
    return one_minus_inv_q(fp) *
           (geometric_tail(fp, one, j0) - kernel_amplitude(params) * geometric_tail(fp, params.gamma, j0));
}

void require_nu(int nu) {
    if (nu <= 0) throw std::invalid_argument("truncation: nu must be a positive integer, got " + std::to_string(nu));
}

}  // namespace

Constants constants(const OperatorParams& params) {
    const FieldParams& fp = params.fp;
    const Exponent& g = params.gamma;
    Constants out;
    out.c = (Scalar(1) - q_power(fp, g, 1)) / (Scalar(1) - q_power(fp, -g - Exponent(1), 1));
    if (params.log_case()) {
        Rational coeff = Rational(1 - static_cast<long>(fp.q), static_cast<unsigned long>(fp.q));
        out.d = Scalar(ExactScalar::log_q(fp.q, coeff, -1));
        out.cd = out.c * out.d;
        return out;
    }
    out.d = (Scalar(1) - q_power(fp, g, -1)) / (Scalar(1) - q_power(fp, g - Exponent(1), 1));
    out.cd = out.c * out.d;
    Scalar num = Scalar(1) - q_power(fp, g, -1);
    num *= num;
    Scalar den = q_power(fp, Exponent(2) * g + Exponent(1), -1) - q_power(fp, g, -1) -
                 q_power(fp, g + Exponent(2), -1) + q_power(fp, Exponent(1), -1);
    out.cd_product_form = num / den;
    if (!close(out.cd.to_double(), out.cd_product_form->to_double(), 1e-12))
        throw std::logic_error("constants: c*d disagrees with its product form");
    return out;
}

ExtendedFunction riesz_potential(const OperatorParams& params, const TestFunction& phi, Exec exec) {
    if (!(phi.field() == params.fp)) throw std::invalid_argument("riesz_potential: field mismatch");
    const Constants k = constants(params);
    const ExtendedFunction input(phi);
    const IntegrationRegion whole = IntegrationRegion::whole(params.fp);
    TestFunction core = TestFunction::from_function(
        params.fp, phi.support_level(), phi.constancy_level(),
        [&](const Point& x) { return k.d * integrate_product(riesz_profile(params, x), input, whole); }, exec);
    Complex mass = k.d * phi.integral();
    Tail tail = params.log_case() ? Tail::log(Complex(0), mass) : Tail::power(mass, params.gamma - Exponent(1));
    return ExtendedFunction(std::move(core), std::move(tail));
}

Complex vladimirov_hypersingular(const OperatorParams& params, const ExtendedFunction& u, const Point& x) {
    const Constants k = constants(params);
    return k.c * integrate_product(hypersingular_profile(params, x), u, IntegrationRegion::whole(params.fp), u.evaluate(x));
}

Complex truncated_vladimirov(const OperatorParams& params, int nu, const ExtendedFunction& u, const Point& x) {
    require_nu(nu);
    const Constants k = constants(params);
    return k.c * integrate_product(hypersingular_profile(params, x), u, IntegrationRegion::outside(x, nu + 1),
                                   u.evaluate(x));
}

Scalar kernel_R(const OperatorParams& params, int j) {
    if (j <= 0) return Scalar(0);
    const FieldParams& fp = params.fp;
    if (params.log_case())
        return Scalar(ExactScalar::log_q(fp.q, Rational(1, static_cast<unsigned long>(fp.q - 1)) + j));
    // |tau|^(gamma - 1) = q^(-j (gamma - 1))
    return Scalar(1) - kernel_amplitude(params) * q_power(fp, params.gamma - Exponent(1), -j);
}

KernelShellTable kernel_table(const OperatorParams& params, int j_max) {
    KernelShellTable t{params, constants(params).cd, {}, {}, {}, Scalar(0), Scalar(0), 0.0};
    t.min_R1 = std::numeric_limits<double>::infinity();
    for (int j = 1; j <= j_max; ++j) {
        Scalar r = kernel_R(params, j);
        Scalar r1 = t.cd * r;
        Rational mu = haar_measure(Region::Sphere, j, params.fp);
        t.partial_sum += r1 * Scalar(mu);
        t.min_R1 = std::min(t.min_R1, r1.to_double());
        t.R.push_back(std::move(r));
        t.R1.push_back(std::move(r1));
        t.measure.push_back(std::move(mu));
    }
    t.normalization = t.cd * kernel_mass_from(params, 1);
    return t;
}

double kernel_R_oracle(const OperatorParams& params, int j, int depth) {
    const FieldParams& fp = params.fp;
    const Exponent& g = params.gamma;
    const bool log_case = params.log_case();
    const Exponent one(1);
    const Point tau = Point::unit(fp, j);  // |tau| = q^-j
    const int tau_exp = -j;
    const Scalar lq(log_q(fp));
    const Scalar shell = one_minus_inv_q(fp);

    auto log_abs = [&](const AbsValue& a) { return Scalar(ExactScalar::log_q(fp.q, a.exponent)); };
    const Scalar tau_term = log_case ? Scalar(ExactScalar::log_q(fp.q, tau_exp)) : q_power(fp, g - one, tau_exp);

    // shells |xi| = q^i for i = 0..last are walked cell by cell
    const int last = std::max(0, tau_exp) + 1;
    Scalar total;
    for (int i = 0; i <= last; ++i) {
        const Scalar weight = log_case ? q_pow(fp, -2 * i) : q_power(fp, g + one, -i);
        Sampler sampler = [&](const Point& xi) -> Scalar {
            AbsValue a = (xi + tau).abs(fp);
            Scalar v = log_case ? log_abs(a) : q_power(fp, g - one, a.exponent);
            return weight * (v - tau_term);
        };
        OracleTail tail;
        tail.singular = {-tau};
        // cell B(-tau, level): int |xi + tau|^(g-1) - |tau|^(g-1) by shells around -tau
        tail.integral = [&](const Point&, int level) -> Scalar {
            Scalar inner = log_case ? -(shell * lq * weighted_geometric_tail(fp, one, level))
                                    : shell * geometric_tail(fp, g, level);
            return weight * (inner - tau_term * q_pow(fp, -level));
        };
        OracleOptions options;
        options.resolution = -i + depth;
        options.exec = Exec::Serial;
        total += brute_force_oracle(fp, sampler, Region::Sphere, Point::zero(fp), -i, options, tail).total();
    }
    // |xi| = q^i > |tau| for i > last: integrand q^-i(g+1) (q^(i(g-1)) - |tau|^(g-1))
    if (log_case) {
        total += shell * lq *
                 (weighted_geometric_tail(fp, one, last + 1) - Scalar(tau_exp) * geometric_tail(fp, one, last + 1));
    } else {
        total += shell * (geometric_tail(fp, one, last + 1) - tau_term * geometric_tail(fp, g, last + 1));
    }
    return total.to_double();
}

Complex averaging_apply(const OperatorParams& params, int nu, const TestFunction& phi, const Point& x) {
    require_nu(nu);
    if (params.gamma > Exponent(1) && !phi.integral().is_zero())
        throw std::domain_error("averaging_apply: gamma > 1 requires a mean-zero (Lizorkin) input");
    const FieldParams& fp = params.fp;
    const Constants k = constants(params);
    const int constancy = phi.constancy_level();
    // shells with j + nu < k see the variation of phi; the rest see phi(x)
    const int first_flat = std::max(1, constancy - nu);
    Complex total;
    for (int j = 1; j < first_flat; ++j) {
        Complex sphere = phi.ball_integral(x, j + nu) - phi.ball_integral(x, j + nu + 1);
        total += sphere * (kernel_R(params, j) * q_pow(fp, nu));
    }
    total += phi.evaluate(x) * kernel_mass_from(params, first_flat);
    return total * k.cd;
}

double minkowski_bound(const OperatorParams& params, double p, const TestFunction& phi, int nu, Exec exec) {
    require_nu(nu);
    const FieldParams& fp = params.fp;
    const Constants k = constants(params);
    const int cell_level = phi.constancy_level() - nu;  // omega(phi, sigma tau) is constant on these tau-cells
    double total = 0.0;
    for (int j = 1; j < cell_level; ++j) {
        const double r1 = std::abs((k.cd * kernel_R(params, j)).to_double());
        const std::size_t per_ball = coset_count(fp, j + 1, cell_level);
        const std::size_t count = coset_count(fp, j, cell_level) - per_ball;
        const double cell = std::pow(static_cast<double>(fp.q), -cell_level);
        double shell = ordered_sum<double>(
            count,
            [&](std::size_t i) {
                Point tau = coset_representative(i + per_ball, fp, j, cell_level);
                return modulus_of_continuity(phi, tau.scaled(nu), p, Exec::Serial) * cell;
            },
            exec);
        total += r1 * shell;
    }
    return total;
}

TestFunction residual_function(const OperatorParams& params, const TestFunction& phi, int nu, Exec exec) {
    require_nu(nu);
    const int window = std::min(phi.support_level(), nu + 1);
    return TestFunction::from_function(
        params.fp, window, phi.constancy_level(),
        [&](const Point& x) { return averaging_apply(params, nu, phi, x) - phi.evaluate(x); }, exec);
}

ResidualReport inversion_residual(const OperatorParams& params, double p, const TestFunction& phi, int nu, Exec exec) {
    if (!(p >= 1)) throw std::invalid_argument("inversion_residual: p must be >= 1");
    ResidualReport report;
    if (params.log_case()) {
        if (!ExtendedFunction(phi).satisfies_decay_gate())
            throw std::domain_error("inversion_residual: input fails the decay hypothesis O(|t|^-beta), beta > 1");
        if (p != 1.0) report.warnings.push_back("gamma = 1: convergence is only asserted in L^1");
    } else if (params.gamma < Exponent(1)) {
        if (p >= 1.0 / params.gamma.to_double())
            report.warnings.push_back("p >= 1/gamma: outside 1 <= p < 1/gamma");
    } else {
        report.warnings.push_back("gamma > 1: kernel positivity not guaranteed");
    }
    TestFunction residual = residual_function(params, phi, nu, exec);
    report.exact_zero = residual.is_exact() &&
                        std::all_of(residual.values().begin(), residual.values().end(),
                                    [](const Complex& v) { return v.is_zero(); });
    report.value = report.exact_zero ? 0.0 : lp_norm(ExtendedFunction(residual), p, exec);
    report.bound = minkowski_bound(params, p, phi, nu, exec);
    return report;
}

}  // namespace ultra
