#include "ultra/multidim.hpp"

#include <algorithm>
#include <stdexcept>

#include "ultra/operators.hpp"

namespace ultra {

DimensionBridge DimensionBridge::make(std::uint32_t p, std::uint32_t n, const Exponent& alpha) {
    if (!(alpha > Exponent(0))) throw std::domain_error("DimensionBridge: alpha must be positive");
    FieldParams base = FieldParams::make(p, 1);
    FieldParams ext = FieldParams::make(p, n);
    return {base, ext, alpha, alpha / Exponent(static_cast<std::int64_t>(n))};
}

AbsValue max_norm(const Point& x) {
    auto v = x.valuation();
    if (!v) return AbsValue::of_zero();
    return AbsValue::power(-*v);
}

Complex taibleson_direct(const DimensionBridge& bridge, const TestFunction& f, const Point& x, Exec exec) {
    const std::uint32_t p = bridge.base.p;
    const auto n = static_cast<std::size_t>(bridge.ext.n);
    const FieldParams& base = bridge.base;
    const Exponent dim(static_cast<std::int64_t>(n));
    const Exponent& a = bridge.alpha;
    const int k = f.constancy_level();
    const Complex fx = f.evaluate(x);

    // every z with ||z - x|| > p^outer lies outside the support
    AbsValue nx = max_norm(x);
    const int outer = std::max(f.m(), nx.zero ? f.m() : nx.exponent);
    const int width = outer + k;  // digits per coordinate of w = z - x

    const std::uint64_t per_axis = checked_pow(p, static_cast<std::uint64_t>(width));
    const std::size_t count = checked_pow(per_axis, n);
    const Rational step = rational_pow(Rational(static_cast<unsigned long>(p)), -outer);
    const Scalar cell(rational_pow(Rational(static_cast<unsigned long>(p)), -static_cast<std::int64_t>(n) * k));

    Complex near = ordered_sum<Complex>(
        count,
        [&](std::size_t index) -> Complex {
            std::vector<Rational> coords(n);
            std::size_t rest = index;
            for (std::size_t i = 0; i < n; ++i) {
                coords[i] = Rational(static_cast<unsigned long>(rest % per_axis)) * step;
                rest /= per_axis;
            }
            Point w = Point::from_rationals(bridge.ext, coords);
            AbsValue nw = max_norm(w);
            if (nw.zero || nw.exponent <= -k) return Complex();
            Complex diff = f.evaluate(x + w) - fx;
            if (diff.is_zero()) return Complex();
            return diff * (q_power(base, dim + a, -nw.exponent) * cell);
        },
        exec);

    // shells ||w|| = p^r, r > outer: measure (1 - p^-n) p^(n r), f(z) = 0
    Scalar shell(Rational(1) - rational_pow(Rational(static_cast<unsigned long>(p)), -static_cast<std::int64_t>(n)));
    Complex far = -fx * (shell * geometric_tail(base, a, outer + 1));
    Scalar constant = (Scalar(1) - q_power(base, a, 1)) / (Scalar(1) - q_power(base, -a - dim, 1));
    return constant * (near + far);
}

Complex taibleson_via_extension(const DimensionBridge& bridge, const TestFunction& f, const Point& x) {
    return vladimirov_hypersingular(bridge.params(), ExtendedFunction(f), x);
}

Scalar kernel_R_multidim(const DimensionBridge& bridge, int j) {
    const Exponent dim(static_cast<std::int64_t>(bridge.ext.n));
    if (!(bridge.alpha > Exponent(0)) || !(bridge.alpha < dim))
        throw std::domain_error("kernel_R_multidim: alpha must lie in (0, n), got " + bridge.alpha.str());
    return kernel_R(bridge.params(), j);
}

}  // namespace ultra
