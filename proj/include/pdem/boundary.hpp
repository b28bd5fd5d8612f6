#pragma once

#include <cmath>

#include "pdem/error.hpp"

namespace pdem {

/// Closure at one end of a grid. The endpoint value is eliminated through
/// psi(end) = ghost_ratio * psi(adjacent interior node).
struct BoundaryCondition {
    enum class Kind {
        Dirichlet,  ///< psi = 0 at the endpoint
        Robin,      ///< psi'/psi = c, closed as if the log-derivative were constant
        Frobenius,  ///< psi ~ |x - origin|^exponent; psi'/psi = exponent/(x - origin) at the end
    };

    Kind kind = Kind::Dirichlet;
    double c = 0.0;
    double exponent = 0.0;
    double origin = 0.0;

    static constexpr BoundaryCondition dirichlet() noexcept { return {}; }
    static constexpr BoundaryCondition robin(double c) noexcept { return {Kind::Robin, c, 0.0, 0.0}; }
    static constexpr BoundaryCondition frobenius(double exponent, double origin) noexcept {
        return {Kind::Frobenius, 0.0, exponent, origin};
    }

    /// psi(x_end) / psi(x_adjacent).
    [[nodiscard]] double ghost_ratio(double x_end, double x_adjacent) const {
        switch (kind) {
            case Kind::Dirichlet: return 0.0;
            case Kind::Robin: return std::exp(c * (x_end - x_adjacent));
            case Kind::Frobenius: {
                const double de = std::abs(x_end - origin);
                const double da = std::abs(x_adjacent - origin);
                if (!(de < da)) {
                    throw ParameterError("Frobenius closure: singular origin must lie outside the grid");
                }
                return std::pow(de / da, exponent);
            }
        }
        return 0.0;
    }

    /// Log-derivative psi'/psi imposed at x_end (infinite for Dirichlet).
    [[nodiscard]] double log_derivative(double x_end) const noexcept {
        switch (kind) {
            case Kind::Dirichlet: return INFINITY;
            case Kind::Robin: return c;
            case Kind::Frobenius: return exponent / (x_end - origin);
        }
        return INFINITY;
    }
};

struct BoundarySpec {
    BoundaryCondition left;
    BoundaryCondition right;

    static constexpr BoundarySpec dirichlet() noexcept { return {}; }
};

}  // namespace pdem
