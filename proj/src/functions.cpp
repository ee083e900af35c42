#include "ultra/functions.hpp"

#include <cmath>
#include <stdexcept>

namespace ultra {

namespace {

Rational q_rational(const FieldParams& fp) { return Rational(static_cast<unsigned long>(fp.q)); }

Scalar q_pow(const FieldParams& fp, int e) { return Scalar(rational_pow(q_rational(fp), e)); }

}  // namespace

// ----------------------------------------------------------- TestFunction

TestFunction::TestFunction(FieldParams fp, int support_level, int constancy_level, std::vector<Complex> values)
    : fp_(fp), support_level_(support_level), constancy_level_(constancy_level), values_(std::move(values)) {
    if (constancy_level_ < support_level_)
        throw std::invalid_argument("TestFunction: constancy level must not be coarser than the support level");
    std::size_t expected = coset_count(fp_, support_level_, constancy_level_);
    if (values_.size() != expected)
        throw std::invalid_argument("TestFunction: table has " + std::to_string(values_.size()) + " entries, expected " +
                                    std::to_string(expected));
    build_pyramid();
}

TestFunction TestFunction::zero(const FieldParams& fp) { return TestFunction(fp, 0, 0, {Complex(0)}); }

TestFunction TestFunction::indicator(const FieldParams& fp, int level) {
    return TestFunction(fp, level, level, {Complex(1)});
}

void TestFunction::build_pyramid() {
    int depth = constancy_level_ - support_level_;
    pyramid_.assign(static_cast<std::size_t>(depth) + 1, {});
    pyramid_.back() = values_;
    for (int d = depth - 1; d >= 0; --d) {
        const auto& finer = pyramid_[static_cast<std::size_t>(d) + 1];
        auto& coarse = pyramid_[static_cast<std::size_t>(d)];
        coarse.assign(finer.size() / fp_.q, Complex());
        for (std::size_t i = 0; i < finer.size(); ++i) coarse[i / fp_.q] += finer[i];
    }
}

bool TestFunction::is_exact() const {
    for (const auto& v : values_)
        if (!v.is_exact()) return false;
    return true;
}

Complex TestFunction::evaluate(const Point& x) const {
    if (!in_support(x)) return Complex(0);
    return values_[coset_index(x, fp_, support_level_, constancy_level_)];
}

Complex TestFunction::integral() const { return pyramid_.front().front() * q_pow(fp_, -constancy_level_); }

Complex TestFunction::ball_integral(const Point& center, int level) const {
    if (level >= constancy_level_) return evaluate(center) * q_pow(fp_, -level);
    if (level >= support_level_) {
        if (!in_support(center)) return Complex(0);
        std::size_t node = coset_index(center, fp_, support_level_, level);
        return pyramid_[static_cast<std::size_t>(level - support_level_)][node] * q_pow(fp_, -constancy_level_);
    }
    if (center.abs(fp_).within_level(level)) return integral();
    return Complex(0);
}

TestFunction TestFunction::refined(int support_level, int constancy_level) const {
    if (support_level > support_level_ || constancy_level < constancy_level_)
        throw std::invalid_argument("TestFunction::refined: target window must contain the current one");
    if (support_level == support_level_ && constancy_level == constancy_level_) return *this;
    return from_function(fp_, support_level, constancy_level, [&](const Point& x) { return evaluate(x); });
}

TestFunction TestFunction::translated(const Point& h) const {
    AbsValue ah = h.abs(fp_);
    int level = ah.within_level(support_level_) ? support_level_ : -ah.exponent;
    return from_function(fp_, level, constancy_level_, [&](const Point& x) { return evaluate(x - h); });
}

TestFunction TestFunction::operator-(const TestFunction& other) const {
    if (!(other.fp_ == fp_)) throw std::invalid_argument("TestFunction: field mismatch");
    int sl = std::min(support_level_, other.support_level_);
    int k = std::max(constancy_level_, other.constancy_level_);
    return from_function(fp_, sl, k, [&](const Point& x) { return evaluate(x) - other.evaluate(x); });
}

TestFunction TestFunction::operator+(const TestFunction& other) const {
    if (!(other.fp_ == fp_)) throw std::invalid_argument("TestFunction: field mismatch");
    int sl = std::min(support_level_, other.support_level_);
    int k = std::max(constancy_level_, other.constancy_level_);
    return from_function(fp_, sl, k, [&](const Point& x) { return evaluate(x) + other.evaluate(x); });
}

TestFunction TestFunction::scaled(const Complex& c) const {
    std::vector<Complex> values;
    values.reserve(values_.size());
    for (const auto& v : values_) values.push_back(v * c);
    return TestFunction(fp_, support_level_, constancy_level_, std::move(values));
}

bool operator==(const TestFunction& a, const TestFunction& b) {
    return a.fp_ == b.fp_ && a.support_level_ == b.support_level_ && a.constancy_level_ == b.constancy_level_ &&
           a.values_ == b.values_;
}

// ------------------------------------------------------------------ Tail

Complex Tail::at(const FieldParams& fp, int r) const {
    if (c1.is_zero()) return c0;
    if (kind == Kind::Power) return c0 + c1 * q_power(fp, s, r);
    return c0 + c1 * Scalar(ExactScalar::log_q(fp.q, r));
}

Tail Tail::minus_constant(const Complex& c) const {
    Tail out = *this;
    out.c0 -= c;
    return out;
}

Tail tail_difference(const Tail& a, const Tail& b) {
    if (b.is_constant()) return a.minus_constant(b.c0);
    if (a.is_constant()) return Tail{b.kind, a.c0 - b.c0, -b.c1, b.s};
    if (a.kind == b.kind && (a.kind == Tail::Kind::Log || a.s == b.s))
        return Tail{a.kind, a.c0 - b.c0, a.c1 - b.c1, a.s};
    throw std::invalid_argument("tail difference: power tails with different exponents are not representable");
}

// ------------------------------------------------------- ExtendedFunction

ExtendedFunction::ExtendedFunction(TestFunction core, Tail tail) : core_(std::move(core)), tail_(std::move(tail)) {}

Complex ExtendedFunction::evaluate(const Point& x) const {
    AbsValue a = x.abs(field());
    if (a.within_level(window_level())) return core_.evaluate(x);
    return tail_.at(field(), a.exponent);
}

Complex ExtendedFunction::ball_integral(const Point& center, int level) const {
    const FieldParams& fp = field();
    AbsValue ac = center.abs(fp);
    bool in_window = ac.within_level(window_level());
    if (!in_window && level > -ac.exponent) return tail_.at(fp, ac.exponent) * q_pow(fp, -level);
    if (in_window && level >= window_level()) return core_.ball_integral(center, level);
    // the ball is B(0, level) and contains the window
    Complex total = core_.integral();
    Rational shell = 1 - Rational(1, static_cast<unsigned long>(fp.q));
    for (int r = -window_level() + 1; r <= -level; ++r)
        total += tail_.at(fp, r) * Scalar(shell * rational_pow(q_rational(fp), r));
    return total;
}

bool ExtendedFunction::satisfies_decay_gate() const {
    if (!tail_.c0.is_zero()) return false;
    if (tail_.c1.is_zero()) return true;
    return tail_.kind == Tail::Kind::Power && tail_.s < Exponent(-1);
}

Complex evaluate(const ExtendedFunction& f, const Point& x) { return f.evaluate(x); }

Complex integral(const TestFunction& f) { return f.integral(); }

// ----------------------------------------------------------------- norms

double lp_distance(const ExtendedFunction& f, const ExtendedFunction& g, double p, Exec exec) {
    if (!(p >= 1)) throw std::invalid_argument("lp_distance: p must be >= 1");
    if (!(f.field() == g.field())) throw std::invalid_argument("lp_distance: field mismatch");
    const FieldParams& fp = f.field();
    int window = std::min(f.window_level(), g.window_level());
    int k = std::max(f.constancy_level(), g.constancy_level());

    Tail diff = tail_difference(f.tail(), g.tail());
    double tail_part = 0.0;
    if (!diff.is_zero()) {
        if (!diff.c0.is_zero() || diff.kind == Tail::Kind::Log)
            throw DivergentIntegral("lp_distance: difference does not decay at infinity");
        double decay = 1.0 + diff.s.to_double() * p;
        if (!(decay < 0)) throw DivergentIntegral("lp_distance: power tail decays too slowly for this p");
        double c = std::pow(diff.c1.abs(), p);
        tail_part = (1.0 - 1.0 / static_cast<double>(fp.q)) * c * geometric_tail(fp, -decay, -window + 1).to_double();
    }

    std::size_t count = coset_count(fp, window, k);
    double cell = std::pow(static_cast<double>(fp.q), -k);
    double core_part = ordered_sum<double>(
        count,
        [&](std::size_t i) {
            Point x = coset_representative(i, fp, window, k);
            double d = (f.evaluate(x) - g.evaluate(x)).abs();
            return d == 0.0 ? 0.0 : std::pow(d, p) * cell;
        },
        exec);
    return std::pow(core_part + tail_part, 1.0 / p);
}

double lp_norm(const ExtendedFunction& f, double p, Exec exec) {
    return lp_distance(f, ExtendedFunction(TestFunction::zero(f.field())), p, exec);
}

double modulus_of_continuity(const TestFunction& phi, const Point& h, double p, Exec exec) {
    if (!(p >= 1)) throw std::invalid_argument("modulus_of_continuity: p must be >= 1");
    const FieldParams& fp = phi.field();
    AbsValue ah = h.abs(fp);
    if (ah.within_level(phi.constancy_level())) return 0.0;
    int window = std::min(phi.support_level(), -ah.exponent);
    int k = phi.constancy_level();
    double cell = std::pow(static_cast<double>(fp.q), -k);
    double sum = ordered_sum<double>(
        coset_count(fp, window, k),
        [&](std::size_t i) {
            Point x = coset_representative(i, fp, window, k);
            double d = (phi.evaluate(x) - phi.evaluate(x - h)).abs();
            return d == 0.0 ? 0.0 : std::pow(d, p) * cell;
        },
        exec);
    return std::pow(sum, 1.0 / p);
}

TestFunction lizorkin_project(const TestFunction& phi, int window_level) {
    if (window_level > phi.support_level())
        throw std::invalid_argument("lizorkin_project: window must contain the support");
    TestFunction wide = phi.refined(window_level, phi.constancy_level());
    Complex mean = phi.integral() * q_pow(phi.field(), window_level);
    if (mean.is_zero()) return wide;
    std::vector<Complex> values;
    values.reserve(wide.values().size());
    for (const auto& v : wide.values()) values.push_back(v - mean);
    return TestFunction(phi.field(), window_level, phi.constancy_level(), std::move(values));
}

}  // namespace ultra
