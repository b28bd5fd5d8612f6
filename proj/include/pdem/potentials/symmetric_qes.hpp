#pragma once

#include <algorithm>
#include <cmath>

#include "pdem/reference_potential.hpp"

namespace pdem {

/// Symmetric double well, a Razavy special case with two known levels:
///   U = A^2 sinh^2(y) / 4 - A cosh y + A/2 + 1/4,  E0 = 0, E1 = A.
class SymmetricQES final : public ReferencePotential {
public:
    explicit SymmetricQES(double a) : a_(a) {
        if (!(a > 0.0)) throw ParameterError("symmetric QES requires A > 0");
    }

    [[nodiscard]] double a() const noexcept { return a_; }

    std::string kind() const override { return "qes"; }
    std::string describe() const override { return "qes(A=" + std::to_string(a_) + ")"; }
    Interval domain() const override { return {}; }

    double value(double y) const override {
        const double s = std::sinh(y);
        return 0.25 * a_ * a_ * s * s - a_ * std::cosh(y) + 0.5 * a_ + 0.25;
    }

    KnownSpectrum known_levels(int count) const override {
        KnownSpectrum out;
        out.levels.push_back({0, 0.0});
        if (count > 1) out.levels.push_back({1, a_});
        out.quasi_exact = true;
        return out;
    }

    NumericBox numeric_box(int) const override {
        // Known states decay like exp(-(A/2) cosh y); stop where that is e^-40.
        const double edge = std::max(std::acosh(std::max(80.0 / a_, 1.0)), 3.0);
        return {EdgeTreatment::dirichlet(-edge), EdgeTreatment::dirichlet(edge)};
    }

private:
    double a_;
};

}  // namespace pdem
