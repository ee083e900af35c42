#pragma once

#include <stdexcept>
#include <vector>

#include "ultra/field.hpp"
#include "ultra/numerics.hpp"
#include "ultra/parallel.hpp"

namespace ultra {

/// An integral or norm that does not converge. Raised from structural checks
/// on tail exponents, never from a numerical blow-up.
class DivergentIntegral : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Locally constant, compactly supported function.
///
/// Supported in the ball at support_level (= -m, radius q^m) and constant on
/// balls at constancy_level (= k). The table holds one value per level-k
/// coset of the support ball, in canonical coset order.
class TestFunction {
public:
    TestFunction(FieldParams fp, int support_level, int constancy_level, std::vector<Complex> values);

    static TestFunction zero(const FieldParams& fp);
    /// Indicator of the ball at `level` around the origin.
    static TestFunction indicator(const FieldParams& fp, int level);
    /// Tabulate f on the cosets of a window.
    template <class F>
    static TestFunction from_function(const FieldParams& fp, int support_level, int constancy_level, F&& f,
                                      Exec exec = Exec::Parallel) {
        std::size_t count = coset_count(fp, support_level, constancy_level);
        auto values = tabulate<Complex>(
            count, [&](std::size_t i) { return f(coset_representative(i, fp, support_level, constancy_level)); }, exec);
        return TestFunction(fp, support_level, constancy_level, std::move(values));
    }

    const FieldParams& field() const noexcept { return fp_; }
    int support_level() const noexcept { return support_level_; }
    int constancy_level() const noexcept { return constancy_level_; }
    int m() const noexcept { return -support_level_; }
    const std::vector<Complex>& values() const noexcept { return values_; }
    bool is_exact() const;

    bool in_support(const Point& x) const { return x.abs(fp_).within_level(support_level_); }
    Complex evaluate(const Point& x) const;
    Complex integral() const;
    /// Integral over the ball at `level` around `center`, exact.
    Complex ball_integral(const Point& center, int level) const;

    /// Same function tabulated on a larger window and/or finer cosets.
    TestFunction refined(int support_level, int constancy_level) const;
    /// x -> f(x - h)
    TestFunction translated(const Point& h) const;

    TestFunction operator-(const TestFunction& other) const;
    TestFunction operator+(const TestFunction& other) const;
    TestFunction scaled(const Complex& c) const;

    /// Same table, same levels.
    friend bool operator==(const TestFunction& a, const TestFunction& b);

private:
    void build_pyramid();

    FieldParams fp_;
    int support_level_;
    int constancy_level_;
    std::vector<Complex> values_;
    // pyramid_[d][node]: sum of the table over the level (support_level + d) ball `node`
    std::vector<std::vector<Complex>> pyramid_;
};

/// Behaviour of an ExtendedFunction outside its window, as a function of
/// r where |x| = q^r:  c0 + c1 q^(s r)  (Power)  or  c0 + c1 r ln q  (Log).
struct Tail {
    enum class Kind { Power, Log };

    Kind kind = Kind::Power;
    Complex c0;
    Complex c1;
    Exponent s;

    static Tail zero() { return {}; }
    static Tail constant(Complex c) { return {Kind::Power, std::move(c), {}, {}}; }
    /// c |x|^s
    static Tail power(Complex c, Exponent s) { return {Kind::Power, {}, std::move(c), s}; }
    /// c0 + c1 ln|x|, with ln|x| = r ln q
    static Tail log(Complex c0, Complex c1) { return {Kind::Log, std::move(c0), std::move(c1), {}}; }

    bool is_zero() const { return c0.is_zero() && c1.is_zero(); }
    bool is_constant() const { return c1.is_zero(); }
    /// Value at |x| = q^r.
    Complex at(const FieldParams& fp, int r) const;
    Tail minus_constant(const Complex& c) const;
};

/// Difference of two tails when it is again a Tail; throws otherwise.
Tail tail_difference(const Tail& a, const Tail& b);

/// A test-function core on a ball-aligned window plus an exact tail beyond it.
/// This is the class that Riesz potentials of test functions land in.
class ExtendedFunction {
public:
    ExtendedFunction(TestFunction core, Tail tail = Tail::zero());

    const FieldParams& field() const noexcept { return core_.field(); }
    const TestFunction& core() const noexcept { return core_; }
    const Tail& tail() const noexcept { return tail_; }
    int window_level() const noexcept { return core_.support_level(); }
    int constancy_level() const noexcept { return core_.constancy_level(); }

    Complex evaluate(const Point& x) const;
    /// Integral over a ball, exact. The ball may extend into the tail region.
    Complex ball_integral(const Point& center, int level) const;

    /// Decay hypothesis O(|t|^-beta), beta > 1, decided from the tail tag.
    bool satisfies_decay_gate() const;

private:
    TestFunction core_;
    Tail tail_;
};

Complex evaluate(const ExtendedFunction& f, const Point& x);
Complex integral(const TestFunction& f);

/// ||f - g||_p including the exact tail contribution.
double lp_distance(const ExtendedFunction& f, const ExtendedFunction& g, double p, Exec exec = Exec::Parallel);
double lp_norm(const ExtendedFunction& f, double p, Exec exec = Exec::Parallel);

/// omega_p(phi, h) = ||phi - phi(. - h)||_p
double modulus_of_continuity(const TestFunction& phi, const Point& h, double p, Exec exec = Exec::Parallel);

/// phi - (int phi / q^M) 1_{|x| <= q^M}; window_level = -M must not exceed the support level.
TestFunction lizorkin_project(const TestFunction& phi, int window_level);

}  // namespace ultra
