#pragma once

#include "ultra/field.hpp"
#include "ultra/functions.hpp"
#include "ultra/params.hpp"

namespace ultra {

/// K^n with the max norm on one side, the unramified extension L of degree n
/// on the other. Both act on the same coordinates; ||x||^n = |x|_L.
struct DimensionBridge {
    FieldParams base;  // K, residue cardinality q0 = p
    FieldParams ext;   // L, q = q0^n
    Exponent alpha;
    Exponent gamma;    // alpha / n

    static DimensionBridge make(std::uint32_t p, std::uint32_t n, const Exponent& alpha);
    OperatorParams params() const { return OperatorParams::make(ext, alpha); }
};

/// max_j |x_j|_K as a power of q0 (exponent in q0 units).
AbsValue max_norm(const Point& x);

/// (1 - q0^a) / (1 - q0^(-a-n)) int (f(z) - f(x)) ||z - x||^-(n+a) dz, summed over
/// max-norm shells with a coordinate-wise coset enumeration in K^n.
Complex taibleson_direct(const DimensionBridge& bridge, const TestFunction& f, const Point& x,
                         Exec exec = Exec::Parallel);

/// The same operator read on L: the hypersingular operator with q = q0^n and gamma = alpha / n.
Complex taibleson_via_extension(const DimensionBridge& bridge, const TestFunction& f, const Point& x);

/// Averaging kernel on the shell ||tau|| = q0^-j, from the one-dimensional
/// kernel over L. Requires 0 < alpha < n.
Scalar kernel_R_multidim(const DimensionBridge& bridge, int j);

}  // namespace ultra
