#pragma once

#include <complex>
#include <vector>

#include "ultra/field.hpp"
#include "ultra/functions.hpp"
#include "ultra/params.hpp"

namespace ultra {

/// Rank-zero additive character x -> exp(2 pi i {x}), taken coordinate-wise
/// on Q_p^n and multiplied across coordinates ({x} is the p-adic fractional
/// part). Trivial exactly on the unit ball's dual lattice, i.e. on |x| <= 1.
class Character {
public:
    explicit Character(FieldParams fp) : fp_(fp) {}

    /// Exact phase in [0, 1): sum_i {x_i} mod 1.
    Rational phase(const Point& x) const;
    std::complex<double> operator()(const Point& x) const;
    /// chi(x . y) with the coordinate-wise pairing.
    std::complex<double> pair(const Point& x, const Point& y) const;

private:
    FieldParams fp_;
};

std::complex<double> character_eval(const Character& chi, const Point& x);

/// F f(xi) = int chi(x xi) f(x) dx; `inverse` uses the conjugate character.
/// Support and constancy levels swap: a function supported on |x| <= q^m and
/// constant at level k maps to one supported on |xi| <= q^k, constant at level m.
TestFunction fourier_transform(const TestFunction& f, bool inverse = false, Exec exec = Exec::Parallel);

/// D^alpha f(x) = F^-1[ |xi|^gamma F f ](x) by finite character sums; the
/// shells of the coset around xi = 0 are summed in closed form.
Complex multiplier_vladimirov(const OperatorParams& params, const TestFunction& f, const Point& x);

/// multiplier_vladimirov at every coset of a window (canonical order).
std::vector<Complex> multiplier_vladimirov_table(const OperatorParams& params, const TestFunction& f, int window_level,
                                                 int resolution, Exec exec = Exec::Parallel);

}  // namespace ultra
