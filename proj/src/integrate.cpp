#include "ultra/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ultra {

namespace {

Rational q_rational(const FieldParams& fp) { return Rational(static_cast<unsigned long>(fp.q)); }

Scalar q_pow(const FieldParams& fp, int e) { return Scalar(rational_pow(q_rational(fp), e)); }

Scalar one_minus_inv_q(const FieldParams& fp) { return Scalar(Rational(1) - Rational(1, static_cast<unsigned long>(fp.q))); }

std::optional<int> abs_exponent(const Point& x, const FieldParams& fp) {
    AbsValue a = x.abs(fp);
    if (a.zero) return std::nullopt;
    return a.exponent;
}

/// Child balls of B(c, level) in canonical order; child 0 contains c.
Point child_center(const Point& c, std::size_t t, const FieldParams& fp, int level) {
    return c + coset_representative(t, fp, level, level + 1);
}

class ProductIntegrator {
public:
    ProductIntegrator(const RadialProfile& profile, const ExtendedFunction& f, const Complex& offset)
        : fp_(f.field()),
          profile_(profile),
          singular_(profile.shift.value_or(Point::zero(f.field()))),
          f_(f),
          offset_(offset) {}

    Complex region(const IntegrationRegion& r) {
        switch (r.kind) {
            case IntegrationRegion::Kind::Ball: return ball(r.center, r.level);
            case IntegrationRegion::Kind::Sphere: return sphere(r.center, r.level);
            case IntegrationRegion::Kind::Outside: return outside(r.center, r.level);
            case IntegrationRegion::Kind::Whole: {
                int far = far_exponent(std::nullopt);
                return ball(Point::zero(fp_), -far) + far_tail(far + 1);
            }
        }
        throw std::logic_error("unreachable");
    }

private:
    /// int over B(c, level) of the profile alone.
    Scalar profile_ball(const Point& c, int level) const {
        bool singular_inside = (singular_ - c).abs(fp_).within_level(level);
        if (!singular_inside) {
            auto e = abs_exponent(c - singular_, fp_);
            return profile_.at(fp_, *e) * q_pow(fp_, -level);
        }
        if (profile_.kind == RadialProfile::Kind::LogAbs) return Scalar(log_over_ball(fp_, -level));
        if (!profile_.locally_integrable())
            throw DivergentIntegral("integrate_product: |x|^" + profile_.s.str() + " is not integrable at its centre");
        return power_over_ball(fp_, profile_.s + Exponent(1), -level);
    }

    /// Value of f - offset if it is constant on B(c, level).
    std::optional<Complex> constant_value(const Point& c, int level) const {
        AbsValue ac = c.abs(fp_);
        bool in_window = ac.within_level(f_.window_level());
        if (in_window && level >= f_.constancy_level()) return f_.core().evaluate(c) - offset_;
        if (!in_window && level > -ac.exponent) return f_.tail().at(fp_, ac.exponent) - offset_;
        return std::nullopt;
    }

    Complex ball(const Point& c, int level) {
        if (auto v = constant_value(c, level)) {
            if (v->is_zero()) return Complex(0);
            return *v * profile_ball(c, level);
        }
        bool singular_inside = (singular_ - c).abs(fp_).within_level(level);
        if (!singular_inside) {
            auto e = abs_exponent(c - singular_, fp_);
            Complex fb = f_.ball_integral(c, level) - offset_ * q_pow(fp_, -level);
            return fb * profile_.at(fp_, *e);
        }
        Complex total;
        for (std::size_t t = 0; t < fp_.q; ++t) total += ball(child_center(c, t, fp_, level), level + 1);
        return total;
    }

    Complex sphere(const Point& c, int level) {
        Complex total;
        for (std::size_t t = 1; t < fp_.q; ++t) total += ball(child_center(c, t, fp_, level), level + 1);
        return total;
    }

    /// Beyond q^far every sphere is centred at 0, free of the singular point,
    /// and inside the tail region of f.
    int far_exponent(std::optional<int> floor) const {
        int far = -f_.window_level();
        if (auto e = abs_exponent(singular_, fp_)) far = std::max(far, *e);
        if (floor) far = std::max(far, *floor);
        return far;
    }

    Complex outside(const Point& c, int level) {
        std::optional<int> floor = -level;
        if (auto e = abs_exponent(c, fp_)) floor = std::max(*floor, *e);
        int far = far_exponent(floor);
        Complex total;
        for (int r = -level + 1; r <= far; ++r) total += sphere(c, -r);
        return total + far_tail(far + 1);
    }

    /// sum_{r >= j0} (1 - 1/q) q^r P(q^r) (T(q^r) - offset)
    Complex far_tail(int j0) const {
        const Tail tail = f_.tail().minus_constant(offset_);
        const bool log_profile = profile_.kind == RadialProfile::Kind::LogAbs;
        const Exponent one(1);
        // sum_{r >= j0} r^w q^(r e) for weight w in {0, 1}
        auto series = [&](const Exponent& e, int weight, const char* what) -> Scalar {
            if (!(e < Exponent(0))) throw DivergentIntegral(std::string("integrate_product: divergent tail (") + what + ")");
            if (weight == 0) return geometric_tail(fp_, -e, j0);
            return weighted_geometric_tail(fp_, -e, j0);
        };
        Scalar lq(log_q(fp_));
        Complex total;
        // P(q^r) = q^(r s) or r ln q;  T = c0 + c1 q^(r t) or c0 + c1 r ln q
        const Exponent ps = log_profile ? Exponent(0) : profile_.s;
        const int pw = log_profile ? 1 : 0;
        const Scalar pscale = log_profile ? lq : Scalar(1);
        if (!tail.c0.is_zero()) total += tail.c0 * pscale * series(one + ps, pw, "constant part");
        if (!tail.c1.is_zero()) {
            if (tail.kind == Tail::Kind::Power) {
                total += tail.c1 * pscale * series(one + ps + tail.s, pw, "power part");
            } else {
                if (log_profile) throw DivergentIntegral("integrate_product: log profile against log tail diverges");
                total += tail.c1 * lq * series(one + ps, 1, "log part");
            }
        }
        return total * one_minus_inv_q(fp_);
    }

    FieldParams fp_;
    const RadialProfile& profile_;
    Point singular_;
    const ExtendedFunction& f_;
    Complex offset_;
};

struct OracleAccumulator {
    Scalar sum;
    Scalar tail;
    std::size_t cells = 0;

    OracleAccumulator& operator+=(const OracleAccumulator& o) {
        sum += o.sum;
        tail += o.tail;
        cells += o.cells;
        return *this;
    }
};

}  // namespace

Scalar RadialProfile::at(const FieldParams& fp, int r) const {
    if (kind == Kind::LogAbs) return Scalar(ExactScalar::log_q(fp.q, r));
    return q_power(fp, s, r);
}

Scalar power_over_ball(const FieldParams& fp, const Exponent& alpha, int n) {
    if (!(alpha > Exponent(0))) throw std::domain_error("power_over_ball: alpha must be positive");
    return one_minus_inv_q(fp) / (Scalar(1) - q_power(fp, alpha, -1)) * q_power(fp, alpha, n);
}

Scalar shifted_power_over_sphere(const FieldParams& fp, const Exponent& alpha, int n, const Point& a) {
    if (!(alpha > Exponent(0))) throw std::domain_error("shifted_power_over_sphere: alpha must be positive");
    if (a.abs(fp) != AbsValue::power(n))
        throw std::invalid_argument("shifted_power_over_sphere: |a| must equal the sphere radius");
    Scalar q(static_cast<long>(fp.q));
    Scalar qa = q_power(fp, alpha, -1);
    return (q - Scalar(2) + qa) / (q * (Scalar(1) - qa)) * q_power(fp, alpha, n);
}

ExactScalar log_over_ball(const FieldParams& fp, int n) {
    Rational coeff = (Rational(n) - Rational(1, static_cast<unsigned long>(fp.q - 1))) * rational_pow(q_rational(fp), n);
    return ExactScalar::log_q(fp.q, coeff);
}

ExactScalar shifted_log_over_sphere(const FieldParams& fp, int n, const Point& a) {
    if (a.abs(fp) != AbsValue::power(n))
        throw std::invalid_argument("shifted_log_over_sphere: |a| must equal the sphere radius");
    Rational inv_q(1, static_cast<unsigned long>(fp.q));
    Rational coeff = ((1 - inv_q) * n - Rational(1, static_cast<unsigned long>(fp.q - 1))) * rational_pow(q_rational(fp), n);
    return ExactScalar::log_q(fp.q, coeff);
}

Complex integrate_product(const RadialProfile& profile, const ExtendedFunction& f, const IntegrationRegion& region,
                          const Complex& offset) {
    ProductIntegrator integrator(profile, f, offset);
    return integrator.region(region);
}

OracleResult brute_force_oracle(const FieldParams& fp, const Sampler& sampler, Region region, const Point& center,
                                int level, const OracleOptions& options, const OracleTail& tail) {
    if (options.resolution <= level) throw std::invalid_argument("brute_force_oracle: resolution must be finer than the region");
    if (!tail.singular.empty() && !tail.integral)
        throw std::invalid_argument("brute_force_oracle: singular points need a tail integral");

    auto holds_singular = [&](const Point& c, int lvl) {
        for (const auto& s : tail.singular)
            if ((s - c).abs(fp).within_level(lvl)) return true;
        return false;
    };

    // depth-first refinement of one cell
    std::function<void(const Point&, int, OracleAccumulator&)> visit = [&](const Point& c, int lvl,
                                                                         OracleAccumulator& acc) {
        bool singular = holds_singular(c, lvl);
        bool split = (options.full_depth && lvl < *options.full_depth) || (singular && lvl < options.resolution);
        if (!split) {
            if (singular) {
                acc.tail += tail.integral(c, lvl);
            } else {
                acc.sum += sampler(c) * q_pow(fp, -lvl);
                ++acc.cells;
            }
            return;
        }
        for (std::size_t t = 0; t < fp.q; ++t) visit(child_center(c, t, fp, lvl), lvl + 1, acc);
    };

    // flat, parallel pass over the cells at the first enumeration level
    int flat = std::max(level + 1, std::min(options.full_depth.value_or(level + 1), options.resolution));
    std::size_t count = coset_count(fp, level, flat);
    std::size_t skip = region == Region::Sphere ? coset_count(fp, level + 1, flat) : 0;
    OracleAccumulator acc = ordered_sum<OracleAccumulator>(
        count - skip,
        [&](std::size_t i) {
            OracleAccumulator local;
            Point c = center + coset_representative(i + skip, fp, level, flat);
            visit(c, flat, local);
            return local;
        },
        options.exec);
    return {acc.sum, acc.tail, std::abs(acc.tail.to_double()), acc.cells};
}

}  // namespace ultra
