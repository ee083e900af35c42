#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "ultra/numerics.hpp"

using namespace ultra;

TEST_CASE("exponents parse from integer, decimal, fraction and scientific text") {
    CHECK(Exponent::parse("3") == Exponent(3));
    CHECK(Exponent::parse("-2") == Exponent(-2));
    CHECK(Exponent::parse("0.25") == Exponent(1, 4));
    CHECK(Exponent::parse("1/2") == Exponent(1, 2));
    CHECK(Exponent::parse("1e-1") == Exponent(1, 10));
    CHECK(Exponent::parse("1.0") == Exponent(1));
    CHECK_THROWS_AS(Exponent::parse("abc"), std::invalid_argument);
    CHECK_THROWS_AS(Exponent::parse(""), std::invalid_argument);
    CHECK(Exponent(6, 4).str() == "3/2");
    CHECK(Exponent(4, 2).is_integer());
    CHECK_THROWS(Exponent(1, 2).to_integer());
}

TEST_CASE("q_power is exact exactly when the power of p is an integer power") {
    auto q4 = FieldParams::make(2, 2);
    auto q2 = FieldParams::make(2);
    auto q3 = FieldParams::make(3);
    Scalar a = q_power(q4, Exponent(1, 2), 3);
    REQUIRE(a.is_exact());
    CHECK(a == Scalar(8));
    Scalar b = q_power(q2, Exponent(1, 2), 1);
    CHECK_FALSE(b.is_exact());
    CHECK(b.to_double() == doctest::Approx(1.4142135623730951).epsilon(1e-15));
    Scalar c = q_power(q3, Exponent(2), -1);
    REQUIRE(c.is_exact());
    CHECK(c == Scalar(Rational(1, 9)));
    CHECK(q_power(q4, Exponent(1, 4), 2).is_exact());  // 4^(1/2) = 2
    CHECK_FALSE(q_power(q4, Exponent(1, 4), 1).is_exact());
}

TEST_CASE("geometric tails") {
    auto q2 = FieldParams::make(2);
    auto q3 = FieldParams::make(3);
    CHECK(geometric_tail(q2, Exponent(1), 0) == Scalar(2));
    CHECK(geometric_tail(q2, Exponent(1), 1) == Scalar(1));
    CHECK(geometric_tail(q3, Exponent(2), 0) == Scalar(Rational(9, 8)));
    CHECK_THROWS_AS(geometric_tail(q2, Exponent(0), 0), std::domain_error);
    CHECK_THROWS_AS(geometric_tail(q2, Exponent(-1), 0), std::domain_error);
    CHECK(weighted_geometric_tail(q2, Exponent(1), 1) == Scalar(2));
    CHECK(weighted_geometric_tail(q3, Exponent(1), 1) == Scalar(Rational(3, 4)));
    CHECK(weighted_geometric_tail(q2, Exponent(1), 0) == Scalar(2));
    CHECK_THROWS_AS(weighted_geometric_tail(q2, Exponent(0), 1), std::domain_error);
}

TEST_CASE("geometric tails match partial sums") {
    for (std::uint32_t p : {2u, 3u, 5u}) {
        auto fp = FieldParams::make(p);
        for (double s : {0.3, 1.0, 2.5}) {
            for (int j0 : {-2, 0, 3}) {
                double partial = 0.0, weighted = 0.0;
                for (int j = j0; j < j0 + 400; ++j) {
                    partial += std::pow(p, -s * j);
                    weighted += j * std::pow(p, -s * j);
                }
                CHECK(close(geometric_tail(fp, s, j0).to_double(), partial, 1e-12));
                Exponent se = Exponent::parse(std::to_string(s));
                CHECK(close(weighted_geometric_tail(fp, se, j0).to_double(), weighted, 1e-12));
            }
        }
    }
}

TEST_CASE("property: tail recursion holds exactly on the exact path") {
    auto r = gen::rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        auto fp = FieldParams::make(std::vector<std::uint32_t>{2, 3, 5, 7}[gen::uniform_int(r, 0, 3)]);
        Exponent s(gen::uniform_int(r, 1, 4));
        int j0 = gen::uniform_int(r, -5, 5);
        Scalar lhs = geometric_tail(fp, s, j0);
        Scalar rhs = q_power(fp, s, -j0) + geometric_tail(fp, s, j0 + 1);
        REQUIRE(lhs.is_exact());
        CHECK(lhs == rhs);
        Scalar w = weighted_geometric_tail(fp, s, j0);
        CHECK(w == Scalar(static_cast<long>(j0)) * q_power(fp, s, -j0) + weighted_geometric_tail(fp, s, j0 + 1));
    }
}

TEST_CASE("property: exact and float paths agree") {
    auto r = gen::rng(12);
    for (int trial = 0; trial < 200; ++trial) {
        auto fp = FieldParams::make(std::vector<std::uint32_t>{2, 3, 5}[gen::uniform_int(r, 0, 2)]);
        Exponent s(gen::uniform_int(r, 1, 6), gen::uniform_int(r, 1, 2));
        int j0 = gen::uniform_int(r, -4, 4);
        double exact = geometric_tail(fp, s, j0).to_double();
        double fl = geometric_tail(fp, s.to_double(), j0).to_double();
        CHECK(close(exact, fl, 1e-12));
    }
}

TEST_CASE("ExactScalar arithmetic over Q[ln q, 1/ln q]") {
    ExactScalar l = ExactScalar::log_q(2);
    ExactScalar a = ExactScalar(Rational(1, 2)) + l * ExactScalar(3);
    CHECK(a.a() == Rational(1, 2));
    CHECK(a.b() == Rational(3));
    CHECK_FALSE(a.is_rational());
    ExactScalar inv = ExactScalar::log_q(2, Rational(2), -1);
    ExactScalar prod = inv * l;
    CHECK(prod.is_rational());
    CHECK(prod == ExactScalar(2));
    CHECK(close((a * a).to_double(), std::pow(0.5 + 3 * std::log(2.0), 2), 1e-14));
    CHECK((a - a).is_zero());
    CHECK(close((a / l).to_double(), (0.5 + 3 * std::log(2.0)) / std::log(2.0), 1e-14));
    CHECK_THROWS(ExactScalar(1) / (ExactScalar(1) + l));
    CHECK_THROWS(ExactScalar::log_q(2) + ExactScalar::log_q(3));
}

TEST_CASE("Scalar demotes to double when mixed and reports the path") {
    Scalar e(Rational(1, 3));
    Scalar f = Scalar::from_double(0.5);
    CHECK(e.is_exact());
    CHECK_FALSE((e + f).is_exact());
    CHECK_FALSE((e * f).is_exact());
    CHECK((e + e).is_exact());
    CHECK((e + f).to_double() == doctest::Approx(1.0 / 3 + 0.5));
    CHECK_THROWS_AS(f.exact(), std::logic_error);
    Complex z(Scalar(1), Scalar(2));
    Complex w = z * z;
    CHECK(w == Complex(Scalar(-3), Scalar(4)));
    CHECK(w.is_exact());
    CHECK(close(Complex::from_std({1.0, 1.0}).abs(), std::sqrt(2.0)));
}

TEST_CASE("close uses a relative-or-absolute scale") {
    CHECK(close(1e9, 1e9 + 1e-2, 1e-10));
    CHECK_FALSE(close(1.0, 1.0 + 1e-8, 1e-10));
    CHECK(close(0.0, 1e-11, 1e-10));
}
