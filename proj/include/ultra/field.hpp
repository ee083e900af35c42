#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ultra/numerics.hpp"

namespace ultra {

/// The coordinate model Q_p^n of the unramified extension of degree n.
///
/// q = p^n is the residue cardinality of the extension. With n = 1 this is
/// the base field itself.
struct FieldParams {
    std::uint32_t p = 2;
    std::uint32_t n = 1;
    std::uint64_t q = 2;

    static FieldParams make(std::uint32_t p, std::uint32_t n = 1);
    FieldParams base() const { return make(p, 1); }

    friend bool operator==(const FieldParams&, const FieldParams&) = default;
};

bool is_prime(std::uint64_t value);

/// Normalized absolute value of a Point: zero, or q^exponent.
struct AbsValue {
    bool zero = true;
    int exponent = 0;

    static AbsValue of_zero() { return {}; }
    static AbsValue power(int e) { return {false, e}; }

    /// |x| <= q^(-level), i.e. x lies in the ball at that level.
    bool within_level(int level) const { return zero || exponent <= -level; }
    Rational value(const FieldParams& fp) const;

    friend bool operator==(const AbsValue&, const AbsValue&) = default;
};

/// Compare absolute values, zero being the smallest.
bool operator<(const AbsValue& a, const AbsValue& b);

/// One coordinate mantissa * p^exponent, mantissa coprime to p (or zero).
struct Coordinate {
    std::int64_t mantissa = 0;
    int exponent = 0;

    friend bool operator==(const Coordinate&, const Coordinate&) = default;
};

/// Point of Q_p^n with coordinates in Z[1/p].
///
/// Only the additive structure and scaling by powers of p are available;
/// multiplication in the extension field is not needed anywhere.
class Point {
public:
    Point() = default;
    Point(std::uint32_t p, std::vector<Coordinate> coords);

    static Point zero(const FieldParams& fp);
    /// Coordinates as rationals; each denominator must be a power of p.
    static Point from_rationals(const FieldParams& fp, const std::vector<Rational>& coords);
    static Point from_integers(const FieldParams& fp, const std::vector<std::int64_t>& coords);
    /// p^e along the given axis.
    static Point unit(const FieldParams& fp, int e, std::size_t axis = 0);

    std::uint32_t prime() const noexcept { return p_; }
    std::size_t dim() const noexcept { return coords_.size(); }
    const std::vector<Coordinate>& coords() const noexcept { return coords_; }
    const Coordinate& operator[](std::size_t i) const { return coords_[i]; }

    bool is_zero() const;
    /// min_j v_p(x_j), empty for the zero point.
    std::optional<int> valuation() const;
    AbsValue abs(const FieldParams& fp) const;
    /// The p-adic digit of coordinate i at position j (coefficient of p^j).
    std::uint32_t digit(std::size_t i, int j) const;
    Rational coordinate(std::size_t i) const;

    /// x * p^e
    Point scaled(int e) const;
    /// Coordinate-wise product; the product-field character needs it.
    Point hadamard(const Point& other) const;

    Point& operator+=(const Point& other);
    Point& operator-=(const Point& other);
    Point operator-() const;
    friend Point operator+(Point a, const Point& b) { return a += b; }
    friend Point operator-(Point a, const Point& b) { return a -= b; }
    friend bool operator==(const Point&, const Point&) = default;

    std::string str() const;

private:
    std::uint32_t p_ = 2;
    std::vector<Coordinate> coords_;
};

AbsValue abs_value(const Point& x, const FieldParams& fp);

/// {x : |x - center| <= q^(-level)}
struct BallSpec {
    Point center;
    int level = 0;

    bool contains(const Point& x, const FieldParams& fp) const;
    Rational measure(const FieldParams& fp) const;
};

/// Canonical coset of a resolution-level ball inside an ambient ball
/// centred at the origin. digits[i] lists a_j for j in [ball.level, resolution).
struct CosetAddress {
    int ambient_level = 0;
    int resolution = 0;
    std::vector<std::vector<std::uint32_t>> digits;

    static CosetAddress of(const Point& x, int ambient_level, int resolution);
    Point representative(const FieldParams& fp) const;

    friend bool operator==(const CosetAddress&, const CosetAddress&) = default;
};

enum class Region { Ball, Sphere };

/// Haar measure of the ball at `level` or of the sphere |x| = q^(-level).
Rational haar_measure(Region region, int level, const FieldParams& fp);

/// Number of resolution-level cosets in an ambient ball: q^(resolution - ambient).
std::size_t coset_count(const FieldParams& fp, int ambient_level, int resolution);

/// Position of x's coset in the canonical order. x must lie in the ambient ball.
///
/// The order is lexicographic on the digit sequence read level by level
/// (coarsest level first, coordinates in order within a level), so every
/// sub-ball is a contiguous block of indices.
std::size_t coset_index(const Point& x, const FieldParams& fp, int ambient_level, int resolution);

/// Canonical representative sum_j a_j p^j of the coset with the given index.
Point coset_representative(std::size_t index, const FieldParams& fp, int ambient_level, int resolution);

/// All canonical representatives, in canonical order.
std::vector<Point> enumerate_cosets(int ambient_level, int resolution, const FieldParams& fp);

/// Integer power with overflow check.
std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exponent);

}  // namespace ultra
