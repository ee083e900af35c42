#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace ultra {

struct FieldParams;

using Rational = mpq_class;
using Integer = mpz_class;

/// Default relative tolerance for comparing the exact and float paths.
inline constexpr double kDefaultTolerance = 1e-10;

/// Rational exponent such as alpha, gamma = alpha/n, or a power-law tail.
///
/// Exponents stay rational so that q^(exponent * k) can be recognised as
/// rational whenever it is one.
class Exponent {
public:
    Exponent() = default;
    Exponent(std::int64_t num, std::int64_t den = 1);
    explicit Exponent(Rational value);

    /// Accepts "3", "-2", "0.25", "1/2", "1e-1".
    static Exponent parse(std::string_view text);

    const Rational& value() const noexcept { return value_; }
    double to_double() const { return value_.get_d(); }
    bool is_integer() const;
    std::int64_t to_integer() const;  // throws unless is_integer()
    std::string str() const;

    friend Exponent operator+(const Exponent& a, const Exponent& b) { return Exponent(Rational(a.value_ + b.value_)); }
    friend Exponent operator-(const Exponent& a, const Exponent& b) { return Exponent(Rational(a.value_ - b.value_)); }
    friend Exponent operator*(const Exponent& a, const Exponent& b) { return Exponent(Rational(a.value_ * b.value_)); }
    friend Exponent operator/(const Exponent& a, const Exponent& b) { return Exponent(Rational(a.value_ / b.value_)); }
    Exponent operator-() const { return Exponent(Rational(-value_)); }
    friend bool operator==(const Exponent& a, const Exponent& b) { return a.value_ == b.value_; }
    friend bool operator<(const Exponent& a, const Exponent& b) { return a.value_ < b.value_; }
    friend bool operator<=(const Exponent& a, const Exponent& b) { return a.value_ <= b.value_; }
    friend bool operator>(const Exponent& a, const Exponent& b) { return a.value_ > b.value_; }

private:
    Rational value_{0};
};

/// Element of Q[L, 1/L] where L = ln q.
///
/// The quantities met in practice are a + b*L (log integrals) and r/L (the
/// Riesz constant for the logarithmic kernel). Products like c*d*R cancel the
/// powers of L exactly, which is what the exact path is meant to expose.
class ExactScalar {
public:
    ExactScalar() = default;
    ExactScalar(long value) : ExactScalar(Rational(value)) {}
    ExactScalar(int value) : ExactScalar(Rational(value)) {}
    ExactScalar(const Rational& value);

    /// coeff * (ln q)^power
    static ExactScalar log_q(std::uint64_t q, const Rational& coeff = 1, int power = 1);

    /// Coefficient of (ln q)^power; a() and b() are the powers 0 and 1.
    Rational coefficient(int power) const;
    Rational a() const { return coefficient(0); }
    Rational b() const { return coefficient(1); }

    std::uint64_t q() const noexcept { return q_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_rational() const noexcept;
    bool is_monomial() const noexcept { return terms_.size() <= 1; }
    const std::vector<std::pair<int, Rational>>& terms() const noexcept { return terms_; }

    double to_double() const;
    std::string str() const;

    ExactScalar& operator+=(const ExactScalar& other);
    ExactScalar& operator-=(const ExactScalar& other);
    ExactScalar& operator*=(const ExactScalar& other);
    ExactScalar operator-() const;

    friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
    friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
    friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
    /// Exact only when the divisor is a monomial; see divides_exactly().
    friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b);
    friend bool operator==(const ExactScalar& a, const ExactScalar& b);
    friend bool operator!=(const ExactScalar& a, const ExactScalar& b) { return !(a == b); }

private:
    void merge_q(const ExactScalar& other);
    void add_term(int power, const Rational& coeff);

    std::uint64_t q_ = 0;                          // 0 while no log terms are present
    std::vector<std::pair<int, Rational>> terms_;  // sorted by power, nonzero coefficients
};

/// Real value on either the exact path or the double path.
///
/// Mixing the two demotes to double; is_exact() reports which path a
/// computation ended on.
class Scalar {
public:
    Scalar() : value_(ExactScalar()) {}
    Scalar(int value) : value_(ExactScalar(value)) {}
    Scalar(long value) : value_(ExactScalar(value)) {}
    Scalar(const Rational& value) : value_(ExactScalar(value)) {}
    Scalar(ExactScalar value) : value_(std::move(value)) {}
    static Scalar from_double(double value) { Scalar s; s.value_ = value; return s; }

    bool is_exact() const noexcept { return std::holds_alternative<ExactScalar>(value_); }
    const ExactScalar& exact() const;  // throws std::logic_error on the float path
    double to_double() const;
    bool is_zero() const;
    std::string str() const;

    Scalar& operator+=(const Scalar& other);
    Scalar& operator-=(const Scalar& other);
    Scalar& operator*=(const Scalar& other);
    Scalar& operator/=(const Scalar& other);
    Scalar operator-() const;

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    /// Exact equality on the exact path, bitwise equality on doubles.
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

private:
    std::variant<ExactScalar, double> value_;
};

/// Complex value with Scalar parts.
struct Complex {
    Scalar re;
    Scalar im;

    Complex() = default;
    Complex(Scalar real) : re(std::move(real)) {}
    Complex(int real) : re(real) {}
    Complex(Scalar real, Scalar imag) : re(std::move(real)), im(std::move(imag)) {}
    static Complex from_std(std::complex<double> z);

    bool is_exact() const { return re.is_exact() && im.is_exact(); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    std::complex<double> to_std() const { return {re.to_double(), im.to_double()}; }
    double abs() const { return std::abs(to_std()); }
    std::string str() const;

    Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
    Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
    Complex& operator*=(const Complex& o);
    Complex& operator*=(const Scalar& s) { re *= s; im *= s; return *this; }
    Complex& operator/=(const Scalar& s) { re /= s; im /= s; return *this; }
    Complex operator-() const { return {-re, -im}; }

    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
    friend Complex operator*(Complex a, const Scalar& s) { return a *= s; }
    friend Complex operator*(const Scalar& s, Complex a) { return a *= s; }
    friend Complex operator/(Complex a, const Scalar& s) { return a /= s; }
    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }
};

std::ostream& operator<<(std::ostream& os, const ExactScalar& x);
std::ostream& operator<<(std::ostream& os, const Scalar& x);
std::ostream& operator<<(std::ostream& os, const Complex& x);

/// Relative-or-absolute closeness: |a - b| <= tol * max(1, |a|, |b|).
bool close(double a, double b, double tol = kDefaultTolerance);
bool close(const Complex& a, const Complex& b, double tol = kDefaultTolerance);

/// Integer power of a rational, negative exponents allowed.
Rational rational_pow(const Rational& base, std::int64_t exponent);

/// q^(alpha * k), exact iff the power of p it denotes is an integer power.
Scalar q_power(const FieldParams& fp, const Exponent& alpha, std::int64_t k);

/// sum_{j >= j0} q^(-s j), s > 0.
Scalar geometric_tail(const FieldParams& fp, const Exponent& s, std::int64_t j0);
Scalar geometric_tail(const FieldParams& fp, double s, std::int64_t j0);

/// sum_{j >= j0} j q^(-s j), s > 0.
Scalar weighted_geometric_tail(const FieldParams& fp, const Exponent& s, std::int64_t j0);

/// ln q as an exact scalar.
ExactScalar log_q(const FieldParams& fp);

}  // namespace ultra
