#include "ultra/field.hpp"

#include <sstream>
#include <stdexcept>

namespace ultra {

namespace {

using i128 = __int128;

std::int64_t narrow(i128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("Point: coordinate mantissa overflow");
    return static_cast<std::int64_t>(v);
}

i128 pow128(std::uint32_t p, int e) {
    i128 r = 1;
    for (int i = 0; i < e; ++i) {
        r *= p;
        if (r > (i128(1) << 100)) throw std::overflow_error("Point: exponent spread too large");
    }
    return r;
}

Coordinate normalized(std::uint32_t p, i128 mantissa, int exponent) {
    if (mantissa == 0) return {};
    while (mantissa % p == 0) {
        mantissa /= p;
        ++exponent;
    }
    return {narrow(mantissa), exponent};
}

Coordinate add(std::uint32_t p, const Coordinate& a, const Coordinate& b) {
    if (a.mantissa == 0) return b;
    if (b.mantissa == 0) return a;
    int e = std::min(a.exponent, b.exponent);
    i128 m = i128(a.mantissa) * pow128(p, a.exponent - e) + i128(b.mantissa) * pow128(p, b.exponent - e);
    return normalized(p, m, e);
}

}  // namespace

bool is_prime(std::uint64_t value) {
    if (value < 2) return false;
    for (std::uint64_t d = 2; d * d <= value; ++d)
        if (value % d == 0) return false;
    return true;
}

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exponent) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exponent; ++i)
        if (__builtin_mul_overflow(r, base, &r)) throw std::overflow_error("checked_pow: overflow");
    return r;
}

FieldParams FieldParams::make(std::uint32_t p, std::uint32_t n) {
    if (!is_prime(p)) throw std::invalid_argument("FieldParams: p = " + std::to_string(p) + " is not prime");
    if (n < 1) throw std::invalid_argument("FieldParams: degree must be >= 1");
    return {p, n, checked_pow(p, n)};
}

Rational AbsValue::value(const FieldParams& fp) const {
    if (zero) return 0;
    return rational_pow(Rational(static_cast<unsigned long>(fp.q)), exponent);
}

bool operator<(const AbsValue& a, const AbsValue& b) {
    if (a.zero) return !b.zero;
    if (b.zero) return false;
    return a.exponent < b.exponent;
}

// ------------------------------------------------------------------ Point

Point::Point(std::uint32_t p, std::vector<Coordinate> coords) : p_(p), coords_(std::move(coords)) {
    for (auto& c : coords_) c = normalized(p_, c.mantissa, c.exponent);
}

Point Point::zero(const FieldParams& fp) { return Point(fp.p, std::vector<Coordinate>(fp.n)); }

Point Point::from_rationals(const FieldParams& fp, const std::vector<Rational>& coords) {
    if (coords.size() != fp.n) throw std::invalid_argument("Point: expected " + std::to_string(fp.n) + " coordinates");
    std::vector<Coordinate> out;
    for (Rational r : coords) {
        r.canonicalize();
        Integer den = r.get_den();
        int e = 0;
        while (den % fp.p == 0) {
            den /= fp.p;
            --e;
        }
        if (den != 1) throw std::invalid_argument("Point: denominator of " + r.get_str() + " is not a power of p");
        Integer num = r.get_num();
        if (!num.fits_slong_p()) throw std::overflow_error("Point: numerator too large");
        out.push_back({num.get_si(), e});
    }
    return Point(fp.p, std::move(out));
}

Point Point::from_integers(const FieldParams& fp, const std::vector<std::int64_t>& coords) {
    if (coords.size() != fp.n) throw std::invalid_argument("Point: expected " + std::to_string(fp.n) + " coordinates");
    std::vector<Coordinate> out;
    for (auto v : coords) out.push_back({v, 0});
    return Point(fp.p, std::move(out));
}

Point Point::unit(const FieldParams& fp, int e, std::size_t axis) {
    Point x = zero(fp);
    x.coords_.at(axis) = {1, e};
    return x;
}

bool Point::is_zero() const {
    for (const auto& c : coords_)
        if (c.mantissa != 0) return false;
    return true;
}

std::optional<int> Point::valuation() const {
    std::optional<int> v;
    for (const auto& c : coords_)
        if (c.mantissa != 0 && (!v || c.exponent < *v)) v = c.exponent;
    return v;
}

AbsValue Point::abs(const FieldParams& fp) const {
    if (fp.p != p_ || fp.n != coords_.size()) throw std::invalid_argument("Point: field parameters mismatch");
    auto v = valuation();
    if (!v) return AbsValue::of_zero();
    return AbsValue::power(-*v);
}

std::uint32_t Point::digit(std::size_t i, int j) const {
    const Coordinate& c = coords_.at(i);
    if (c.mantissa == 0 || j < c.exponent) return 0;
    int t = j - c.exponent;
    i128 n = c.mantissa;
    i128 mag = n < 0 ? -n : n;
    // beyond the leading digit: 0 for positive, p-1 for negative mantissas
    i128 pt = 1;
    for (int s = 0; s < t; ++s) {
        pt *= p_;
        if (pt > mag) return n < 0 ? p_ - 1 : 0;
    }
    i128 modulus = pt * p_;
    i128 r = n % modulus;
    if (r < 0) r += modulus;
    return static_cast<std::uint32_t>(r / pt);
}

Rational Point::coordinate(std::size_t i) const {
    const Coordinate& c = coords_.at(i);
    Rational r{Integer(static_cast<long>(c.mantissa))};
    return r * rational_pow(Rational(p_), c.exponent);
}

Point Point::scaled(int e) const {
    Point out = *this;
    for (auto& c : out.coords_)
        if (c.mantissa != 0) c.exponent += e;
    return out;
}

Point Point::hadamard(const Point& other) const {
    if (other.p_ != p_ || other.dim() != dim()) throw std::invalid_argument("Point: dimension mismatch");
    std::vector<Coordinate> out;
    for (std::size_t i = 0; i < dim(); ++i) {
        const auto& a = coords_[i];
        const auto& b = other.coords_[i];
        out.push_back(normalized(p_, i128(a.mantissa) * b.mantissa, a.exponent + b.exponent));
    }
    return Point(p_, std::move(out));
}

Point& Point::operator+=(const Point& other) {
    if (other.p_ != p_ || other.dim() != dim()) throw std::invalid_argument("Point: dimension mismatch");
    for (std::size_t i = 0; i < dim(); ++i) coords_[i] = add(p_, coords_[i], other.coords_[i]);
    return *this;
}

Point Point::operator-() const {
    Point out = *this;
    for (auto& c : out.coords_) c.mantissa = -c.mantissa;
    return out;
}

Point& Point::operator-=(const Point& other) { return *this += -other; }

std::string Point::str() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < dim(); ++i) os << (i ? ", " : "") << coordinate(i).get_str();
    os << ")";
    return os.str();
}

AbsValue abs_value(const Point& x, const FieldParams& fp) { return x.abs(fp); }

bool BallSpec::contains(const Point& x, const FieldParams& fp) const {
    return (x - center).abs(fp).within_level(level);
}

Rational BallSpec::measure(const FieldParams& fp) const { return haar_measure(Region::Ball, level, fp); }

Rational haar_measure(Region region, int level, const FieldParams& fp) {
    Rational ball = rational_pow(Rational(static_cast<unsigned long>(fp.q)), -level);
    if (region == Region::Ball) return ball;
    return ball * (1 - Rational(1, static_cast<unsigned long>(fp.q)));
}

// ---------------------------------------------------------------- cosets

std::size_t coset_count(const FieldParams& fp, int ambient_level, int resolution) {
    if (resolution < ambient_level) throw std::invalid_argument("coset enumeration: resolution coarser than ambient ball");
    return checked_pow(fp.q, static_cast<std::uint64_t>(resolution - ambient_level));
}

std::size_t coset_index(const Point& x, const FieldParams& fp, int ambient_level, int resolution) {
    std::size_t index = 0;
    for (int j = ambient_level; j < resolution; ++j) {
        std::size_t tuple = 0;
        for (std::size_t i = 0; i < fp.n; ++i) tuple = tuple * fp.p + x.digit(i, j);
        index = index * fp.q + tuple;
    }
    return index;
}

Point coset_representative(std::size_t index, const FieldParams& fp, int ambient_level, int resolution) {
    int depth = resolution - ambient_level;
    std::vector<i128> mantissa(fp.n, 0);
    // the last index digit is the finest level, weight p^(depth - 1)
    for (int t = depth - 1; t >= 0; --t) {
        std::size_t tuple = index % fp.q;
        index /= fp.q;
        i128 weight = pow128(fp.p, t);
        for (std::size_t i = fp.n; i-- > 0;) {
            mantissa[i] += i128(tuple % fp.p) * weight;
            tuple /= fp.p;
        }
    }
    std::vector<Coordinate> coords;
    for (auto m : mantissa) coords.push_back(normalized(fp.p, m, ambient_level));
    return Point(fp.p, std::move(coords));
}

std::vector<Point> enumerate_cosets(int ambient_level, int resolution, const FieldParams& fp) {
    std::size_t count = coset_count(fp, ambient_level, resolution);
    std::vector<Point> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(coset_representative(i, fp, ambient_level, resolution));
    return out;
}

CosetAddress CosetAddress::of(const Point& x, int ambient_level, int resolution) {
    CosetAddress a{ambient_level, resolution, {}};
    for (std::size_t i = 0; i < x.dim(); ++i) {
        std::vector<std::uint32_t> d;
        for (int j = ambient_level; j < resolution; ++j) d.push_back(x.digit(i, j));
        a.digits.push_back(std::move(d));
    }
    return a;
}

Point CosetAddress::representative(const FieldParams& fp) const {
    if (digits.size() != fp.n) throw std::invalid_argument("CosetAddress: dimension mismatch");
    std::vector<Coordinate> coords;
    for (const auto& d : digits) {
        if (d.size() != static_cast<std::size_t>(resolution - ambient_level))
            throw std::invalid_argument("CosetAddress: wrong digit count");
        i128 m = 0;
        for (std::size_t t = d.size(); t-- > 0;) {
            if (d[t] >= fp.p) throw std::invalid_argument("CosetAddress: digit out of range");
            m = m * fp.p + d[t];
        }
        coords.push_back(normalized(fp.p, m, ambient_level));
    }
    return Point(fp.p, std::move(coords));
}

}  // namespace ultra
