#pragma once

#include <stdexcept>

#include "ultra/field.hpp"
#include "ultra/numerics.hpp"

namespace ultra {

/// Order of differentiation on the model of the degree-n extension.
///
/// alpha is the order on K^n; every one-dimensional formula is applied on
/// the extension with q = p^n and the exponent gamma = alpha / n.
struct OperatorParams {
    FieldParams fp;
    Exponent alpha;
    Exponent gamma;

    static OperatorParams make(const FieldParams& fp, const Exponent& alpha) {
        if (!(alpha > Exponent(0))) throw std::domain_error("OperatorParams: alpha must be positive, got " + alpha.str());
        return {fp, alpha, alpha / Exponent(static_cast<std::int64_t>(fp.n))};
    }

    /// gamma = 1: the logarithmic Riesz kernel.
    bool log_case() const { return gamma == Exponent(1); }
};

}  // namespace ultra
