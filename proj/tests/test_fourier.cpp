#include <doctest.h>

#include <cmath>
#include <complex>

#include "generators.hpp"
#include "ultra/fourier.hpp"
#include "ultra/operators.hpp"

using namespace ultra;

namespace {
const FieldParams q2 = FieldParams::make(2);
Point pt(const FieldParams& fp, Rational x) { return Point::from_rationals(fp, {x}); }

double max_diff(const TestFunction& a, const TestFunction& b) {
    REQUIRE(a.support_level() == b.support_level());
    REQUIRE(a.constancy_level() == b.constancy_level());
    double worst = 0.0;
    for (std::size_t i = 0; i < a.values().size(); ++i) worst = std::max(worst, (a.values()[i] - b.values()[i]).abs());
    return worst;
}
}  // namespace

TEST_CASE("character values") {
    Character chi(q2);
    CHECK(std::abs(chi(pt(q2, 3)) - std::complex<double>(1, 0)) < 1e-15);
    CHECK(std::abs(chi(pt(q2, Rational(1, 2))) - std::complex<double>(-1, 0)) < 1e-15);
    CHECK(std::abs(chi(pt(q2, Rational(3, 4))) - std::complex<double>(0, -1)) < 1e-15);
    CHECK(chi.phase(pt(q2, Rational(-1, 4))) == Rational(3, 4));
    auto q9 = FieldParams::make(3, 2);
    Character chi9(q9);
    CHECK(chi9.phase(Point::from_rationals(q9, {Rational(1, 3), Rational(1, 3)})) == Rational(2, 3));
}

TEST_CASE("property: the character is additive and trivial on the unit ball") {
    auto r = gen::rng(51);
    for (int trial = 0; trial < 500; ++trial) {
        auto fp = FieldParams::make(std::vector<std::uint32_t>{2, 3, 5}[gen::uniform_int(r, 0, 2)],
                                    static_cast<std::uint32_t>(gen::uniform_int(r, 1, 2)));
        Character chi(fp);
        Point x = gen::point(r, fp, 3, 4), y = gen::point(r, fp, 3, 4);
        CHECK(std::abs(chi(x + y) - chi(x) * chi(y)) < 1e-12);
        Point z = gen::point(r, fp, 0, 5);
        CHECK(chi.phase(z) == 0);
    }
}

TEST_CASE("transforms of ball indicators") {
    auto one = TestFunction::indicator(q2, 0);
    auto f1 = fourier_transform(one);
    CHECK(f1.support_level() == 0);
    CHECK(f1.constancy_level() == 0);
    CHECK(std::abs(f1.values()[0].to_std() - std::complex<double>(1, 0)) < 1e-12);
    auto wide = TestFunction::indicator(q2, -1);
    auto f2 = fourier_transform(wide);
    CHECK(f2.support_level() == 1);
    CHECK(f2.constancy_level() == 1);
    CHECK(std::abs(f2.values()[0].to_std() - std::complex<double>(2, 0)) < 1e-12);
    // the same table viewed on a coarser window vanishes off the small ball
    auto as_table = wide.refined(-1, 1);
    auto f3 = fourier_transform(as_table);
    CHECK(std::abs(f3.evaluate(Point::zero(q2)).to_std() - std::complex<double>(2, 0)) < 1e-12);
    CHECK(std::abs(f3.evaluate(pt(q2, 1)).to_std()) < 1e-12);
}

TEST_CASE("property: inversion, Plancherel and the translation rule") {
    auto r = gen::rng(52);
    for (int trial = 0; trial < 60; ++trial) {
        auto fp = FieldParams::make(gen::uniform_int(r, 0, 1) ? 2 : 3, static_cast<std::uint32_t>(gen::uniform_int(r, 1, 2)));
        auto f = gen::test_function(r, fp, fp.n == 1 ? 2 : 1, fp.n == 1 ? 2 : 1, true);
        auto ft = fourier_transform(f);
        CHECK(max_diff(fourier_transform(ft, true), f) < 1e-12);
        CHECK(close(lp_norm(ExtendedFunction(f), 2.0), lp_norm(ExtendedFunction(ft), 2.0), 1e-10));

        Point h = gen::point(r, fp, 0, 2).scaled(f.support_level());  // keeps the translate in the window
        auto fh = fourier_transform(f.translated(h));
        Character chi(fp);
        for (int s = 0; s < 5; ++s) {
            Point xi = coset_representative(std::uniform_int_distribution<std::size_t>(0, ft.values().size() - 1)(r), fp,
                                            ft.support_level(), ft.constancy_level());
            std::complex<double> lhs = fh.evaluate(xi).to_std();
            std::complex<double> rhs = chi.pair(h, xi) * ft.evaluate(xi).to_std();
            CHECK(std::abs(lhs - rhs) < 1e-10);
        }
    }
}

TEST_CASE("the multiplier definition at spot values") {
    auto one = TestFunction::indicator(q2, 0);
    auto p1 = OperatorParams::make(q2, Exponent(1));
    CHECK(std::abs(multiplier_vladimirov(p1, one, Point::zero(q2)).to_std() - 2.0 / 3) < 1e-12);
    CHECK(std::abs(multiplier_vladimirov(p1, one, pt(q2, Rational(1, 2))).to_std() + 1.0 / 3) < 1e-12);
    auto ph = OperatorParams::make(q2, Exponent(1, 2));
    CHECK(std::abs(multiplier_vladimirov(ph, one, Point::zero(q2)).to_std() - 0.7734590803390134) < 1e-12);
}

TEST_CASE("property: multiplier and hypersingular definitions agree") {
    auto r = gen::rng(53);
    for (int trial = 0; trial < 40; ++trial) {
        auto fp = FieldParams::make(gen::uniform_int(r, 0, 1) ? 2 : 3);
        auto f = gen::test_function(r, fp, 2, 2, true);
        auto params = OperatorParams::make(fp, Exponent::parse(std::vector<const char*>{"0.5", "1", "1.5", "2", "0.3"}[gen::uniform_int(r, 0, 4)]));
        int window = f.support_level() - 1, k = f.constancy_level();
        auto mult = multiplier_vladimirov_table(params, f, window, k);
        ExtendedFunction u(f);
        for (std::size_t i = 0; i < mult.size(); ++i) {
            Complex hyp = vladimirov_hypersingular(params, u, coset_representative(i, fp, window, k));
            CHECK(close(mult[i], hyp, 1e-9));
        }
    }
}

TEST_CASE("multiplier and hypersingular definitions agree over the degree-2 model") {
    // product character on Q_p^2 with the max norm; |xi|_L^gamma = ||xi||^alpha
    auto r = gen::rng(54);
    for (int trial = 0; trial < 10; ++trial) {
        auto fp = FieldParams::make(gen::uniform_int(r, 0, 1) ? 2 : 3, 2);
        auto f = gen::test_function(r, fp, 1, 1);
        auto params = OperatorParams::make(fp, Exponent(1));
        int window = f.support_level() - 1, k = f.constancy_level();
        auto mult = multiplier_vladimirov_table(params, f, window, k);
        for (std::size_t i = 0; i < mult.size(); ++i)
            CHECK(close(mult[i], vladimirov_hypersingular(params, ExtendedFunction(f), coset_representative(i, fp, window, k)), 1e-9));
    }
}
