#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "ultra/field.hpp"
#include "ultra/functions.hpp"
#include "ultra/numerics.hpp"
#include "ultra/parallel.hpp"

namespace ultra {

/// |x - a|^s  or  ln|x - a|, with a = 0 unless shifted.
struct RadialProfile {
    enum class Kind { Power, LogAbs };

    Kind kind = Kind::Power;
    Exponent s;
    std::optional<Point> shift;

    static RadialProfile power(Exponent s) { return {Kind::Power, s, std::nullopt}; }
    static RadialProfile log_abs() { return {Kind::LogAbs, {}, std::nullopt}; }
    static RadialProfile shifted(RadialProfile base, Point a) {
        base.shift = std::move(a);
        return base;
    }

    /// Integrable near its singular point: s > -1 for powers, always for logs.
    bool locally_integrable() const { return kind == Kind::LogAbs || s > Exponent(-1); }
    /// Value at a point where |x - a| = q^r.
    Scalar at(const FieldParams& fp, int r) const;
};

/// Integration domain around a centre: ball |x - c| <= q^-level, sphere
/// |x - c| = q^-level, its exterior |x - c| > q^-level, or all of the space.
struct IntegrationRegion {
    enum class Kind { Ball, Sphere, Outside, Whole };

    Kind kind = Kind::Whole;
    Point center;
    int level = 0;

    static IntegrationRegion ball(Point c, int level) { return {Kind::Ball, std::move(c), level}; }
    static IntegrationRegion sphere(Point c, int level) { return {Kind::Sphere, std::move(c), level}; }
    static IntegrationRegion outside(Point c, int level) { return {Kind::Outside, std::move(c), level}; }
    static IntegrationRegion whole(const FieldParams& fp) { return {Kind::Whole, Point::zero(fp), 0}; }
};

/// int_{|x| <= q^n} |x|^(alpha - 1) dx = (1 - 1/q) / (1 - q^-alpha) q^(alpha n)
Scalar power_over_ball(const FieldParams& fp, const Exponent& alpha, int n);

/// int_{|x| = q^n} |x - a|^(alpha - 1) dx for |a| = q^n.
Scalar shifted_power_over_sphere(const FieldParams& fp, const Exponent& alpha, int n, const Point& a);

/// int_{|x| <= q^n} ln|x| dx = (n - 1/(q - 1)) q^n ln q
ExactScalar log_over_ball(const FieldParams& fp, int n);

/// int_{|x| = q^n} ln|x - a| dx for |a| = q^n.
ExactScalar shifted_log_over_sphere(const FieldParams& fp, int n, const Point& a);

/// int_region profile(x) (f(x) - offset) dx, exact shell by shell.
///
/// Balls on which f is constant are integrated in closed form; the region
/// beyond every window and singular point is summed with geometric tails.
/// Throws DivergentIntegral when the integrand is not absolutely integrable.
Complex integrate_product(const RadialProfile& profile, const ExtendedFunction& f, const IntegrationRegion& region,
                          const Complex& offset = Complex(0));

// ------------------------------------------------------------------ oracle

using Sampler = std::function<Scalar(const Point&)>;

/// Closed-form handling of the resolution-level cells that contain a
/// singular point of the integrand.
struct OracleTail {
    std::vector<Point> singular;
    std::function<Scalar(const Point& center, int level)> integral;
};

struct OracleOptions {
    int resolution = 12;
    /// Every cell is subdivided at least down to this level. Set it equal to
    /// `resolution` for a plain enumeration of all resolution-level cosets.
    std::optional<int> full_depth;
    Exec exec = Exec::Parallel;
};

struct OracleResult {
    Scalar sum;          // coset sum over resolved cells
    Scalar tail;         // closed-form contribution of singular cells
    double tail_bound;   // |tail|
    std::size_t cells;   // number of sampled cells
    Scalar total() const { return sum + tail; }
};

/// Riemann-type coset sum of `sampler` over a ball or sphere.
///
/// Cells are sampled at a representative point. A cell is split when it is
/// coarser than `full_depth`, or when it holds a singular point and is
/// coarser than `resolution`; singular cells at the resolution level are
/// handed to the tail callback.
OracleResult brute_force_oracle(const FieldParams& fp, const Sampler& sampler, Region region, const Point& center,
                                int level, const OracleOptions& options, const OracleTail& tail = {});

}  // namespace ultra
