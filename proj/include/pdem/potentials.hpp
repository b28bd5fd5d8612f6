#pragma once

// Reference (constant-mass) potentials and the deformed Scarf I domain edge.

#include <cmath>
#include <numbers>

#include "pdem/numerics.hpp"
#include "pdem/potentials/free.hpp"
#include "pdem/potentials/kratzer.hpp"
#include "pdem/potentials/scarf1.hpp"
#include "pdem/potentials/symmetric_qes.hpp"
#include "pdem/reference_potential.hpp"

namespace pdem {

/// Positive edge x_q of the Scarf I domain under the mass (1 + q/(1+x^2))^2:
/// the root in (0, pi/2) of atan(x) = (pi/2 - x) / q.
[[nodiscard]] inline double solve_xq(double q, double tol = 1e-12) {
    if (!(q > 0.0) || !std::isfinite(q)) throw ParameterError("solve_xq requires q > 0");
    constexpr double half_pi = 0.5 * std::numbers::pi;
    return numerics::bisect_root([q](double x) { return std::atan(x) - (half_pi - x) / q; }, 0.0,
                                 half_pi, tol);
}

}  // namespace pdem
