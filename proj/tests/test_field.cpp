#include <doctest.h>

#include <set>

#include "generators.hpp"
#include "ultra/field.hpp"

using namespace ultra;

namespace {
Point pt(const FieldParams& fp, std::vector<Rational> c) { return Point::from_rationals(fp, c); }
}  // namespace

TEST_CASE("field parameters") {
    auto fp = FieldParams::make(3, 2);
    CHECK(fp.q == 9);
    CHECK_THROWS_AS(FieldParams::make(4), std::invalid_argument);
    CHECK_THROWS_AS(FieldParams::make(2, 0), std::invalid_argument);
    CHECK(is_prime(2));
    CHECK_FALSE(is_prime(1));
    CHECK_THROWS_AS(checked_pow(2, 64), std::overflow_error);
}

TEST_CASE("absolute values") {
    auto q2 = FieldParams::make(2);
    auto q4 = FieldParams::make(2, 2);
    AbsValue a = pt(q2, {12}).abs(q2);
    CHECK(a.value(q2) == Rational(1, 4));
    AbsValue b = pt(q4, {3, Rational(1, 2)}).abs(q4);
    CHECK(b.value(q4) == 4);
    CHECK(Point::zero(q4).abs(q4).zero);
    CHECK(pt(q2, {Rational(-5, 8)}).abs(q2).value(q2) == 8);
    CHECK_THROWS_AS(pt(q2, {Rational(1, 3)}), std::invalid_argument);
    CHECK_THROWS_AS(pt(q2, {1}).abs(q4), std::invalid_argument);
}

TEST_CASE("Haar measure of balls and spheres") {
    auto q2 = FieldParams::make(2);
    auto q3 = FieldParams::make(3);
    CHECK(haar_measure(Region::Ball, -3, q2) == 8);
    CHECK(haar_measure(Region::Sphere, 0, q2) == Rational(1, 2));
    CHECK(haar_measure(Region::Ball, 0, q3) == 1);
    BallSpec ball{pt(q2, {1}), 1};
    CHECK(ball.contains(pt(q2, {3}), q2));
    CHECK_FALSE(ball.contains(pt(q2, {2}), q2));
    CHECK(ball.measure(q2) == Rational(1, 2));
}

TEST_CASE("coset enumeration order and representatives") {
    auto q2 = FieldParams::make(2);
    auto q3 = FieldParams::make(3);
    auto a = enumerate_cosets(-1, 1, q2);
    REQUIRE(a.size() == 4);
    CHECK(a[0] == pt(q2, {0}));
    CHECK(a[1] == pt(q2, {1}));
    CHECK(a[2] == pt(q2, {Rational(1, 2)}));
    CHECK(a[3] == pt(q2, {Rational(3, 2)}));
    auto b = enumerate_cosets(0, 1, q3);
    REQUIRE(b.size() == 3);
    CHECK(b[2] == pt(q3, {2}));
    auto c = enumerate_cosets(4, 4, q3);
    REQUIRE(c.size() == 1);
    CHECK(c[0].is_zero());
    CHECK_THROWS_AS(enumerate_cosets(2, 1, q3), std::invalid_argument);
}

TEST_CASE("digits of negative and fractional coordinates") {
    auto q3 = FieldParams::make(3);
    Point x = pt(q3, {-1});  // ...2222
    for (int j = 0; j < 6; ++j) CHECK(x.digit(0, j) == 2);
    Point y = pt(q3, {Rational(7, 9)});  // 7/9 = 1*3^-2 + 2*3^-1
    CHECK(y.digit(0, -2) == 1);
    CHECK(y.digit(0, -1) == 2);
    CHECK(y.digit(0, 0) == 0);
    auto addr = CosetAddress::of(y, -2, 1);
    CHECK(addr.digits == std::vector<std::vector<std::uint32_t>>{{1, 2, 0}});
    CHECK(addr.representative(q3) == y);
}

TEST_CASE("property: coset index and representative are inverse, sub-balls are contiguous") {
    auto r = gen::rng(21);
    for (int trial = 0; trial < 300; ++trial) {
        auto fp = FieldParams::make(std::vector<std::uint32_t>{2, 3, 5}[gen::uniform_int(r, 0, 2)],
                                    static_cast<std::uint32_t>(gen::uniform_int(r, 1, 2)));
        int ambient = gen::uniform_int(r, -2, 1);
        int res = ambient + gen::uniform_int(r, 0, 3);
        std::size_t count = coset_count(fp, ambient, res);
        std::size_t i = std::uniform_int_distribution<std::size_t>(0, count - 1)(r);
        Point c = coset_representative(i, fp, ambient, res);
        CHECK(c.abs(fp).within_level(ambient));
        CHECK(coset_index(c, fp, ambient, res) == i);
        // any point of the same cell maps to the same index
        Point shift = gen::point(r, fp, 0, 3).scaled(res);
        CHECK(coset_index(c + shift, fp, ambient, res) == i);
        // the parent ball of c at level res - 1 is the block [i - i % q, i - i % q + q)
        if (res > ambient) {
            std::size_t block = i / fp.q;
            Point parent = coset_representative(block, fp, ambient, res - 1);
            CHECK((c - parent).abs(fp).within_level(res - 1));
        }
    }
}

TEST_CASE("property: cosets partition the ambient ball") {
    for (std::uint32_t p : {2u, 3u}) {
        for (std::uint32_t n : {1u, 2u}) {
            auto fp = FieldParams::make(p, n);
            auto cells = enumerate_cosets(-1, 1, fp);
            Rational total = 0;
            std::set<std::string> seen;
            for (const auto& c : cells) {
                total += haar_measure(Region::Ball, 1, fp);
                seen.insert(CosetAddress::of(c, -1, 1).representative(fp).str());
            }
            CHECK(total == haar_measure(Region::Ball, -1, fp));
            CHECK(seen.size() == cells.size());
        }
    }
}

TEST_CASE("property: ultrametric inequality") {
    auto r = gen::rng(22);
    for (int trial = 0; trial < 2000; ++trial) {
        auto fp = FieldParams::make(std::vector<std::uint32_t>{2, 3, 5}[gen::uniform_int(r, 0, 2)],
                                    static_cast<std::uint32_t>(gen::uniform_int(r, 1, 3)));
        Point x = gen::point(r, fp, 3, 4);
        Point y = gen::point(r, fp, 3, 4);
        AbsValue ax = x.abs(fp), ay = y.abs(fp), s = (x + y).abs(fp);
        AbsValue m = ax < ay ? ay : ax;
        CHECK_FALSE(m < s);
        if (!(ax == ay)) CHECK(s == m);
    }
}

TEST_CASE("sphere decomposition of a ball, truncated sum plus closed tail") {
    for (std::uint32_t p : {2u, 3u, 5u}) {
        auto fp = FieldParams::make(p);
        for (int l = -2; l <= 2; ++l) {
            Rational sum = 0;
            for (int j = l; j < l + 10; ++j) sum += haar_measure(Region::Sphere, j, fp);
            sum += haar_measure(Region::Ball, l + 10, fp);
            CHECK(sum == haar_measure(Region::Ball, l, fp));
        }
    }
}

TEST_CASE("scaling, translation and the coordinate-wise product") {
    auto q4 = FieldParams::make(2, 2);
    Point x = pt(q4, {3, Rational(1, 2)});
    CHECK(x.scaled(1) == pt(q4, {6, 1}));
    CHECK(x.scaled(1).abs(q4).exponent == x.abs(q4).exponent - 1);
    CHECK(x.hadamard(pt(q4, {2, 4})) == pt(q4, {6, 2}));
    CHECK((x - x).is_zero());
    CHECK(x.str() == "(3, 1/2)");
}
