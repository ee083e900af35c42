#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "ultra/experiments.hpp"
#include "ultra/integrate.hpp"

using namespace ultra;

namespace {
const FieldParams q2 = FieldParams::make(2);
const FieldParams q3 = FieldParams::make(3);
Point pt(const FieldParams& fp, Rational x) { return Point::from_rationals(fp, {x}); }
}  // namespace

TEST_CASE("power integrals over balls") {
    CHECK(power_over_ball(q2, Exponent(2), 0) == Scalar(Rational(2, 3)));
    CHECK(power_over_ball(q2, Exponent(1), 3) == Scalar(8));
    // partial shell sums, tests/oracles/derived_values.py
    CHECK(close(power_over_ball(q2, Exponent(3, 2), 0).to_double(), 0.7734590803390134, 1e-14));
    CHECK_THROWS_AS(power_over_ball(q2, Exponent(0), 0), std::domain_error);
}

TEST_CASE("shifted power integrals over spheres") {
    CHECK(shifted_power_over_sphere(q2, Exponent(2), 0, pt(q2, 1)) == Scalar(Rational(1, 6)));
    CHECK(shifted_power_over_sphere(q3, Exponent(1), 1, pt(q3, Rational(1, 3))) == Scalar(2));
    // coset sum at depth 18 plus closed tail, tests/oracles/derived_values.py
    CHECK(close(shifted_power_over_sphere(q2, Exponent(1, 2), 0, pt(q2, 1)).to_double(), 1.207106781187766, 1e-11));
    CHECK_THROWS_AS(shifted_power_over_sphere(q2, Exponent(1), 0, pt(q2, 2)), std::invalid_argument);
}

TEST_CASE("log integrals") {
    CHECK(log_over_ball(q2, 0) == ExactScalar::log_q(2, -1));
    CHECK(log_over_ball(q3, 1) == ExactScalar::log_q(3, Rational(3, 2)));
    CHECK(log_over_ball(q2, 1).is_zero());
    CHECK(shifted_log_over_sphere(q2, 0, pt(q2, 1)) == ExactScalar::log_q(2, -1));
    CHECK(shifted_log_over_sphere(q3, 0, pt(q3, 1)) == ExactScalar::log_q(3, Rational(-1, 2)));
    CHECK(shifted_log_over_sphere(q2, 1, pt(q2, Rational(1, 2))) == ExactScalar::log_q(2, -1));
    CHECK_THROWS_AS(shifted_log_over_sphere(q2, 1, pt(q2, 1)), std::invalid_argument);
}

TEST_CASE("integrate_product examples") {
    ExtendedFunction one_outside(TestFunction::zero(q2), Tail::constant(Complex(1)));
    // |x| >= 1, but the core is zero on |x| = 1: sum_{r >= 1} (1/2) 2^r 2^-2r
    Complex a = integrate_product(RadialProfile::power(Exponent(-2)), one_outside, IntegrationRegion::outside(Point::zero(q2), 1));
    CHECK(a == Complex(Scalar(Rational(1, 2))));
    ExtendedFunction one(TestFunction::indicator(q2, 0));
    Complex b = integrate_product(RadialProfile::power(Exponent(-1, 2)), one, IntegrationRegion::whole(q2));
    CHECK(close(b.re.to_double(), 1.0 + 1.0 / std::sqrt(2.0), 1e-14));
    Complex c = integrate_product(RadialProfile::log_abs(), one, IntegrationRegion::ball(Point::zero(q2), 0));
    REQUIRE(c.re.is_exact());
    CHECK(c.re.exact() == ExactScalar::log_q(2, -1));
}

TEST_CASE("integrate_product rejects divergent integrands structurally") {
    ExtendedFunction one(TestFunction::indicator(q2, 0));
    CHECK_THROWS_AS(integrate_product(RadialProfile::power(Exponent(-1)), one, IntegrationRegion::whole(q2)),
                    DivergentIntegral);
    ExtendedFunction flat(TestFunction::zero(q2), Tail::constant(Complex(1)));
    CHECK_THROWS_AS(integrate_product(RadialProfile::power(Exponent(-1, 2)), flat,
                                      IntegrationRegion::outside(Point::zero(q2), 0)),
                    DivergentIntegral);
    ExtendedFunction log(TestFunction::zero(q2), Tail::log(Complex(0), Complex(1)));
    CHECK_THROWS_AS(integrate_product(RadialProfile::log_abs(), log, IntegrationRegion::outside(Point::zero(q2), 0)),
                    DivergentIntegral);
}

TEST_CASE("property: a ball integral is the sum over its child balls") {
    auto r = gen::rng(41);
    for (int trial = 0; trial < 80; ++trial) {
        const FieldParams& fp = gen::uniform_int(r, 0, 1) ? q2 : q3;
        ExtendedFunction f(gen::test_function(r, fp, 2, 2), Tail::power(Complex(Scalar(Rational(gen::uniform_int(r, -3, 3)))), Exponent(-2)));
        RadialProfile prof = gen::uniform_int(r, 0, 1)
                                 ? RadialProfile::shifted(RadialProfile::power(Exponent(gen::uniform_int(r, 0, 2))), gen::point(r, fp, 1, 2))
                                 : RadialProfile::shifted(RadialProfile::log_abs(), gen::point(r, fp, 1, 2));
        Point c = gen::point(r, fp, 2, 2);
        int level = gen::uniform_int(r, -3, 2);
        Complex whole = integrate_product(prof, f, IntegrationRegion::ball(c, level));
        Complex parts;
        for (std::size_t t = 0; t < fp.q; ++t)
            parts += integrate_product(prof, f, IntegrationRegion::ball(c + coset_representative(t, fp, level, level + 1), level + 1));
        CHECK(whole == parts);
        // ball = centre child + sphere
        Complex sphere = integrate_product(prof, f, IntegrationRegion::sphere(c, level));
        CHECK(whole == sphere + integrate_product(prof, f, IntegrationRegion::ball(c, level + 1)));
    }
}

TEST_CASE("property: integrate_product is linear in f") {
    auto r = gen::rng(42);
    for (int trial = 0; trial < 80; ++trial) {
        const FieldParams& fp = gen::uniform_int(r, 0, 1) ? q2 : q3;
        auto f = gen::test_function(r, fp, 2, 2);
        auto g = gen::test_function(r, fp, 2, 2);
        Complex a(Scalar(gen::small_rational(r)));
        RadialProfile prof = RadialProfile::shifted(RadialProfile::power(Exponent(gen::uniform_int(r, 0, 2))), gen::point(r, fp, 1, 2));
        auto region = IntegrationRegion::whole(fp);
        Complex lhs = integrate_product(prof, ExtendedFunction(f + g.scaled(a)), region);
        Complex rhs = integrate_product(prof, ExtendedFunction(f), region) + a * integrate_product(prof, ExtendedFunction(g), region);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("oracle examples") {
    OracleOptions full;
    full.resolution = 20;
    full.full_depth = 20;
    // |x|^1 sampled on every level-20 cell of O; the cell at 0 is sampled at 0
    Sampler abs_x = [](const Point& x) -> Scalar {
        AbsValue a = x.abs(q2);
        return a.zero ? Scalar(0) : Scalar(a.value(q2));
    };
    OracleResult r = brute_force_oracle(q2, abs_x, Region::Ball, Point::zero(q2), 0, full);
    CHECK(std::abs(r.total().to_double() - 2.0 / 3) < 1e-6);
    CHECK(r.cells == (std::size_t(1) << 20));

    Sampler shifted = [](const Point& x) -> Scalar {
        AbsValue a = (x - Point::unit(q2, 0)).abs(q2);
        return a.zero ? Scalar(0) : Scalar(a.value(q2));
    };
    OracleResult s = brute_force_oracle(q2, shifted, Region::Sphere, Point::zero(q2), 0, full);
    CHECK(std::abs(s.total().to_double() - 1.0 / 6) < 1e-6);

    Sampler unit = [](const Point&) { return Scalar(1); };
    for (int res : {1, 4, 9}) {
        OracleOptions o;
        o.resolution = res;
        CHECK(brute_force_oracle(q2, unit, Region::Ball, Point::zero(q2), 0, o).total() == Scalar(1));
    }
}

TEST_CASE("closed forms against the oracle on the exact grid") {
    for (const FieldParams& fp : {q2, q3, FieldParams::make(5)}) {
        for (int alpha : {1, 2, 3}) {
            for (int n = -2; n <= 2; ++n) {
                for (Formula f : {Formula::PowerOverBall, Formula::ShiftedPowerOverSphere, Formula::LogOverBall,
                                  Formula::ShiftedLogOverSphere}) {
                    Scalar closed = closed_form(f, fp, Exponent(alpha), n);
                    Scalar oracle = formula_oracle(f, fp, Exponent(alpha), n, 12).total();
                    REQUIRE(closed.is_exact());
                    REQUIRE(oracle.is_exact());
                    CHECK(closed == oracle);
                }
            }
        }
    }
}

TEST_CASE("closed forms against the oracle on the float grid") {
    for (const FieldParams& fp : {q2, q3, FieldParams::make(5)}) {
        for (const char* a : {"0.3", "0.5", "1.5"}) {
            for (int n = -2; n <= 2; ++n) {
                for (Formula f : {Formula::PowerOverBall, Formula::ShiftedPowerOverSphere}) {
                    double closed = closed_form(f, fp, Exponent::parse(a), n).to_double();
                    double oracle = formula_oracle(f, fp, Exponent::parse(a), n, 12).total().to_double();
                    CHECK(close(closed, oracle, 1e-8));
                }
            }
        }
    }
}

TEST_CASE("pruned oracle equals full enumeration") {
    for (const FieldParams& fp : {q2, q3}) {
        for (int n : {-1, 0, 1}) {
            Exponent alpha(2);
            Point a = Point::unit(fp, -n);
            Sampler s = [&](const Point& x) { return q_power(fp, alpha - Exponent(1), (x - a).abs(fp).exponent); };
            OracleTail tail{{a}, [&](const Point&, int level) {
                                return Scalar(Rational(1) - Rational(1, static_cast<unsigned long>(fp.q))) *
                                       geometric_tail(fp, alpha, level);
                            }};
            OracleOptions pruned;
            pruned.resolution = 8;
            OracleOptions full = pruned;
            full.full_depth = 8;
            auto p = brute_force_oracle(fp, s, Region::Sphere, Point::zero(fp), -n, pruned, tail);
            auto f = brute_force_oracle(fp, s, Region::Sphere, Point::zero(fp), -n, full, tail);
            CHECK(p.total() == f.total());
            CHECK(p.cells < f.cells);
        }
    }
}
