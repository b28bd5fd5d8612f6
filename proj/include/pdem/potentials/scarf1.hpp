#pragma once

#include <cmath>
#include <numbers>

#include "pdem/reference_potential.hpp"

namespace pdem {

/// Trigonometric Scarf I on (-pi/2, pi/2):
///   U = [A(A-1) + B^2] sec^2 y - B(2A-1) sec y tan y - A^2,  0 < B < A - 1,
/// with levels (A+n)^2 - A^2, n = 0, 1, 2, ...
class ScarfI final : public ReferencePotential {
public:
    /// Distance from +-pi/2 at which the numerical box places its Dirichlet walls.
    static constexpr double kEndpointMargin = 1e-6;

    ScarfI(double a, double b) : a_(a), b_(b) {
        if (!(b > 0.0 && b < a - 1.0)) {
            throw ParameterError("Scarf I requires 0 < B < A - 1 (got A = " + std::to_string(a) +
                                 ", B = " + std::to_string(b) + ")");
        }
    }

    [[nodiscard]] double a() const noexcept { return a_; }
    [[nodiscard]] double b() const noexcept { return b_; }

    std::string kind() const override { return "scarf1"; }
    std::string describe() const override {
        return "scarf1(A=" + std::to_string(a_) + ", B=" + std::to_string(b_) + ")";
    }
    Interval domain() const override { return {-0.5 * std::numbers::pi, 0.5 * std::numbers::pi}; }

    double value(double y) const override {
        const double sec = 1.0 / std::cos(y);
        return (a_ * (a_ - 1.0) + b_ * b_) * sec * sec - b_ * (2.0 * a_ - 1.0) * sec * std::tan(y) -
               a_ * a_;
    }

    KnownSpectrum known_levels(int count) const override {
        KnownSpectrum out;
        for (int n = 0; n < count; ++n) {
            // n (2A + n) is exact whenever A is an integer
            out.levels.push_back({n, n * (2.0 * a_ + n)});
        }
        return out;
    }

    NumericBox numeric_box(int) const override {
        const double edge = 0.5 * std::numbers::pi - kEndpointMargin;
        return {EdgeTreatment::dirichlet(-edge), EdgeTreatment::dirichlet(edge)};
    }

private:
    double a_;
    double b_;
};

}  // namespace pdem
