#include "ultra/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ultra/field.hpp"

namespace ultra {

// ---------------------------------------------------------------- Exponent

Exponent::Exponent(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("Exponent: zero denominator");
    value_ = Rational(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
    value_.canonicalize();
}

Exponent::Exponent(Rational value) : value_(std::move(value)) { value_.canonicalize(); }

Exponent Exponent::parse(std::string_view text) {
    std::string s(text);
    auto fail = [&]() -> Exponent { throw std::invalid_argument("cannot parse exponent '" + s + "'"); };
    if (s.empty()) return fail();
    if (auto slash = s.find('/'); slash != std::string::npos) {
        try {
            Integer num(s.substr(0, slash), 10), den(s.substr(slash + 1), 10);
            if (den == 0) return fail();
            return Exponent(Rational(num, den));
        } catch (const std::invalid_argument&) {
            return fail();
        }
    }
    // decimal with optional exponent, parsed exactly
    std::size_t pos = 0;
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
    std::string digits;
    int scale = 0;
    bool seen_dot = false, seen_digit = false;
    for (; pos < s.size(); ++pos) {
        char c = s[pos];
        if (c >= '0' && c <= '9') {
            digits.push_back(c);
            seen_digit = true;
            if (seen_dot) --scale;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else {
            break;
        }
    }
    if (!seen_digit) return fail();
    if (pos < s.size()) {
        if (s[pos] != 'e' && s[pos] != 'E') return fail();
        try {
            std::size_t used = 0;
            scale += std::stoi(s.substr(pos + 1), &used);
            if (pos + 1 + used != s.size()) return fail();
        } catch (const std::exception&) {
            return fail();
        }
    }
    Rational value{Integer(digits, 10)};
    Integer ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(std::abs(scale)));
    if (scale >= 0) value *= ten_pow; else value /= ten_pow;
    if (negative) value = -value;
    return Exponent(value);
}

bool Exponent::is_integer() const { return value_.get_den() == 1; }

std::int64_t Exponent::to_integer() const {
    if (!is_integer()) throw std::logic_error("Exponent " + str() + " is not an integer");
    if (!value_.get_num().fits_slong_p()) throw std::overflow_error("Exponent too large");
    return value_.get_num().get_si();
}

std::string Exponent::str() const { return value_.get_str(); }

// ------------------------------------------------------------ ExactScalar

ExactScalar::ExactScalar(const Rational& value) {
    if (value != 0) terms_.emplace_back(0, value);
}

ExactScalar ExactScalar::log_q(std::uint64_t q, const Rational& coeff, int power) {
    ExactScalar x;
    if (power != 0) x.q_ = q;
    x.add_term(power, coeff);
    return x;
}

Rational ExactScalar::coefficient(int power) const {
    for (const auto& [k, c] : terms_)
        if (k == power) return c;
    return 0;
}

bool ExactScalar::is_rational() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0);
}

void ExactScalar::merge_q(const ExactScalar& other) {
    if (other.q_ == 0) return;
    if (q_ != 0 && q_ != other.q_)
        throw std::logic_error("ExactScalar: mixing ln q for different q");
    q_ = other.q_;
}

void ExactScalar::add_term(int power, const Rational& coeff) {
    if (coeff == 0) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), power,
                               [](const auto& t, int k) { return t.first < k; });
    if (it != terms_.end() && it->first == power) {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    } else {
        terms_.insert(it, {power, coeff});
    }
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& other) {
    merge_q(other);
    for (const auto& [k, c] : other.terms_) add_term(k, c);
    return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& other) {
    merge_q(other);
    for (const auto& [k, c] : other.terms_) add_term(k, -c);
    return *this;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& other) {
    merge_q(other);
    if (terms_.empty()) return *this;
    if (other.terms_.empty()) {
        terms_.clear();
        return *this;
    }
    ExactScalar out;
    out.q_ = q_;
    for (const auto& [k1, c1] : terms_)
        for (const auto& [k2, c2] : other.terms_) out.add_term(k1 + k2, c1 * c2);
    *this = std::move(out);
    return *this;
}

ExactScalar ExactScalar::operator-() const {
    ExactScalar out = *this;
    for (auto& t : out.terms_) t.second = -t.second;
    return out;
}

ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) {
    if (b.terms_.empty()) throw std::domain_error("ExactScalar: division by zero");
    if (!b.is_monomial()) throw std::domain_error("ExactScalar: divisor is not a monomial");
    const auto& [k, c] = b.terms_.front();
    ExactScalar out;
    out.q_ = a.q_;
    out.merge_q(b);
    for (const auto& [ka, ca] : a.terms_) out.add_term(ka - k, ca / c);
    return out;
}

bool operator==(const ExactScalar& a, const ExactScalar& b) {
    if (a.terms_ != b.terms_) return false;
    return a.is_rational() || a.q_ == b.q_;
}

double ExactScalar::to_double() const {
    double lq = q_ ? std::log(static_cast<double>(q_)) : 0.0;
    double total = 0.0;
    for (const auto& [k, c] : terms_) total += c.get_d() * std::pow(lq, k);
    return total;
}

std::string ExactScalar::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.get_str();
        if (k == 1) os << "*ln" << q_;
        else if (k != 0) os << "*ln" << q_ << "^" << k;
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const ExactScalar& x) { return os << x.str(); }

// ----------------------------------------------------------------- Scalar

const ExactScalar& Scalar::exact() const {
    if (!is_exact()) throw std::logic_error("Scalar: value is on the float path");
    return std::get<ExactScalar>(value_);
}

double Scalar::to_double() const {
    if (is_exact()) return std::get<ExactScalar>(value_).to_double();
    return std::get<double>(value_);
}

bool Scalar::is_zero() const {
    if (is_exact()) return std::get<ExactScalar>(value_).is_zero();
    return std::get<double>(value_) == 0.0;
}

std::string Scalar::str() const {
    if (is_exact()) return std::get<ExactScalar>(value_).str();
    std::ostringstream os;
    os.precision(17);
    os << std::get<double>(value_);
    return os.str();
}

Scalar& Scalar::operator+=(const Scalar& other) {
    if (is_exact() && other.is_exact()) std::get<ExactScalar>(value_) += other.exact();
    else value_ = to_double() + other.to_double();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) {
    if (is_exact() && other.is_exact()) std::get<ExactScalar>(value_) -= other.exact();
    else value_ = to_double() - other.to_double();
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& other) {
    if (is_exact() && other.is_exact()) std::get<ExactScalar>(value_) *= other.exact();
    else value_ = to_double() * other.to_double();
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& other) {
    if (other.is_zero()) throw std::domain_error("Scalar: division by zero");
    if (is_exact() && other.is_exact() && other.exact().is_monomial())
        value_ = std::get<ExactScalar>(value_) / other.exact();
    else
        value_ = to_double() / other.to_double();
    return *this;
}

Scalar Scalar::operator-() const {
    if (is_exact()) return Scalar(-std::get<ExactScalar>(value_));
    return from_double(-std::get<double>(value_));
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.is_exact() != b.is_exact()) return false;
    if (a.is_exact()) return a.exact() == b.exact();
    return std::get<double>(a.value_) == std::get<double>(b.value_);
}

std::ostream& operator<<(std::ostream& os, const Scalar& x) { return os << x.str(); }

// ---------------------------------------------------------------- Complex

Complex Complex::from_std(std::complex<double> z) {
    return {Scalar::from_double(z.real()), Scalar::from_double(z.imag())};
}

Complex& Complex::operator*=(const Complex& o) {
    if (im.is_zero() && o.im.is_zero() && im.is_exact() && o.im.is_exact()) {
        re *= o.re;
        return *this;
    }
    Scalar r = re * o.re - im * o.im;
    Scalar i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

std::string Complex::str() const {
    if (im.is_zero()) return re.str();
    return "(" + re.str() + ", " + im.str() + ")";
}

std::ostream& operator<<(std::ostream& os, const Complex& x) { return os << x.str(); }

bool close(double a, double b, double tol) {
    double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= tol * scale;
}

bool close(const Complex& a, const Complex& b, double tol) {
    auto za = a.to_std(), zb = b.to_std();
    double scale = std::max({1.0, std::abs(za), std::abs(zb)});
    return std::abs(za - zb) <= tol * scale;
}

// --------------------------------------------------------- power helpers

Rational rational_pow(const Rational& base, std::int64_t exponent) {
    if (exponent == 0) return 1;
    if (base == 0) {
        if (exponent < 0) throw std::domain_error("rational_pow: 0 to a negative power");
        return 0;
    }
    unsigned long e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
    Rational out = exponent > 0 ? Rational(num, den) : Rational(den, num);
    out.canonicalize();
    return out;
}

Scalar q_power(const FieldParams& fp, const Exponent& alpha, std::int64_t k) {
    // q^(alpha k) = p^(n alpha k)
    Rational p_exponent = alpha.value() * Rational(static_cast<long>(k)) * Rational(fp.n);
    if (p_exponent.get_den() == 1) {
        if (!p_exponent.get_num().fits_slong_p()) throw std::overflow_error("q_power: exponent too large");
        return Scalar(rational_pow(Rational(fp.p), p_exponent.get_num().get_si()));
    }
    return Scalar::from_double(std::pow(static_cast<double>(fp.p), p_exponent.get_d()));
}

Scalar geometric_tail(const FieldParams& fp, const Exponent& s, std::int64_t j0) {
    if (s <= Exponent(0)) throw std::domain_error("geometric_tail: divergent (s <= 0)");
    return q_power(fp, s, -j0) / (Scalar(1) - q_power(fp, s, -1));
}

Scalar geometric_tail(const FieldParams& fp, double s, std::int64_t j0) {
    if (!(s > 0)) throw std::domain_error("geometric_tail: divergent (s <= 0)");
    double q = static_cast<double>(fp.q);
    return Scalar::from_double(std::pow(q, -s * static_cast<double>(j0)) / (1.0 - std::pow(q, -s)));
}

Scalar weighted_geometric_tail(const FieldParams& fp, const Exponent& s, std::int64_t j0) {
    if (s <= Exponent(0)) throw std::domain_error("weighted_geometric_tail: divergent (s <= 0)");
    // x^j0 (j0 - (j0 - 1) x) / (1 - x)^2 with x = q^-s
    Scalar x = q_power(fp, s, -1);
    Scalar one_minus = Scalar(1) - x;
    Scalar j0s(static_cast<long>(j0));
    return q_power(fp, s, -j0) * (j0s - Scalar(static_cast<long>(j0 - 1)) * x) / (one_minus * one_minus);
}

ExactScalar log_q(const FieldParams& fp) { return ExactScalar::log_q(fp.q); }

}  // namespace ultra
