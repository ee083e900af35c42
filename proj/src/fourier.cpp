#include "ultra/fourier.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ultra/parallel.hpp"

namespace ultra {

namespace {

using i128 = __int128;

/// Phase as num / p^E with 0 <= num < p^E.
struct FastPhase {
    i128 num = 0;
    i128 den = 1;
};

FastPhase fast_phase(const Point& x, std::uint32_t p) {
    int depth = 0;
    for (const auto& c : x.coords())
        if (c.mantissa != 0 && c.exponent < 0) depth = std::max(depth, -c.exponent);
    FastPhase out;
    for (int i = 0; i < depth; ++i) {
        out.den *= p;
        if (out.den > (i128(1) << 62)) throw std::overflow_error("Character: phase denominator too large");
    }
    for (const auto& c : x.coords()) {
        if (c.mantissa == 0 || c.exponent >= 0) continue;
        i128 scale = 1;
        for (int i = 0; i < depth + c.exponent; ++i) scale *= p;
        i128 modulus = out.den / scale;  // p^(-exponent)
        i128 r = i128(c.mantissa) % modulus;
        if (r < 0) r += modulus;
        out.num = (out.num + r * scale) % out.den;
    }
    return out;
}

std::complex<double> unit_root(const FastPhase& ph, bool conjugate) {
    if (ph.num == 0) return {1.0, 0.0};
    long double angle = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(ph.num) /
                        static_cast<long double>(ph.den);
    if (conjugate) angle = -angle;
    return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

Rational q_rational(const FieldParams& fp) { return Rational(static_cast<unsigned long>(fp.q)); }

}  // namespace

Rational Character::phase(const Point& x) const {
    FastPhase ph = fast_phase(x, fp_.p);
    // both fit in 62 bits
    Rational out(Integer(static_cast<long>(ph.num)), Integer(static_cast<long>(ph.den)));
    out.canonicalize();
    return out;
}

std::complex<double> Character::operator()(const Point& x) const { return unit_root(fast_phase(x, fp_.p), false); }

std::complex<double> Character::pair(const Point& x, const Point& y) const { return (*this)(x.hadamard(y)); }

std::complex<double> character_eval(const Character& chi, const Point& x) { return chi(x); }

TestFunction fourier_transform(const TestFunction& f, bool inverse, Exec exec) {
    const FieldParams& fp = f.field();
    const int in_support = f.support_level();
    const int in_constancy = f.constancy_level();
    const std::size_t count = f.values().size();

    std::vector<Point> points(count);
    std::vector<std::complex<double>> values(count);
    for (std::size_t i = 0; i < count; ++i) {
        points[i] = coset_representative(i, fp, in_support, in_constancy);
        values[i] = f.values()[i].to_std();
    }
    const double cell = std::pow(static_cast<double>(fp.q), -in_constancy);

    // output: supported on |xi| <= q^k, constant at level m
    const int out_support = -in_constancy;
    const int out_constancy = -in_support;
    auto out = tabulate<Complex>(
        coset_count(fp, out_support, out_constancy),
        [&](std::size_t j) {
            Point xi = coset_representative(j, fp, out_support, out_constancy);
            std::complex<double> acc = 0.0;
            for (std::size_t i = 0; i < count; ++i) {
                if (values[i] == 0.0) continue;
                acc += values[i] * unit_root(fast_phase(points[i].hadamard(xi), fp.p), inverse);
            }
            return Complex::from_std(acc * cell);
        },
        exec);
    return TestFunction(fp, out_support, out_constancy, std::move(out));
}

namespace {

/// int_{|xi| <= q^-level} |xi|^gamma chi(-x xi) d xi
Scalar radial_character_integral(const FieldParams& fp, const Exponent& gamma, int level, const Point& x) {
    Scalar shell(Rational(1) - Rational(1, static_cast<unsigned long>(fp.q)));
    AbsValue ax = x.abs(fp);
    if (ax.zero) return shell * geometric_tail(fp, Exponent(1) + gamma, level);
    const int v = ax.exponent;
    Scalar total = shell * geometric_tail(fp, Exponent(1) + gamma, std::max(level, v));
    // the sphere |xi| = q^-(v-1) integrates to -q^-v against the character
    if (v - 1 >= level) total -= q_power(fp, gamma, -(v - 1)) * Scalar(rational_pow(q_rational(fp), -v));
    return total;
}

Complex multiplier_from_transform(const OperatorParams& params, const TestFunction& ft, const Point& x) {
    const FieldParams& fp = params.fp;
    const int constancy = ft.constancy_level();
    Character chi(fp);
    Complex total = ft.evaluate(Point::zero(fp)) * radial_character_integral(fp, params.gamma, constancy, x);
    if (!x.abs(fp).within_level(-constancy)) return total;
    if (constancy == ft.support_level()) return total;
    std::complex<double> acc = 0.0;
    const std::size_t count = ft.values().size();
    for (std::size_t i = 1; i < count; ++i) {
        Point c = coset_representative(i, fp, ft.support_level(), constancy);
        std::complex<double> g = ft.values()[i].to_std();
        if (g == 0.0) continue;
        double weight = q_power(fp, params.gamma, c.abs(fp).exponent).to_double();
        acc += weight * g * chi.pair(-x, c);
    }
    acc *= std::pow(static_cast<double>(fp.q), -constancy);
    return total + Complex::from_std(acc);
}

}  // namespace

Complex multiplier_vladimirov(const OperatorParams& params, const TestFunction& f, const Point& x) {
    return multiplier_from_transform(params, fourier_transform(f, false, Exec::Serial), x);
}

std::vector<Complex> multiplier_vladimirov_table(const OperatorParams& params, const TestFunction& f, int window_level,
                                                 int resolution, Exec exec) {
    TestFunction ft = fourier_transform(f, false, exec);
    return tabulate<Complex>(
        coset_count(params.fp, window_level, resolution),
        [&](std::size_t i) {
            return multiplier_from_transform(params, ft, coset_representative(i, params.fp, window_level, resolution));
        },
        exec);
}

}  // namespace ultra
