#pragma once

#include <algorithm>
#include <cmath>

#include "pdem/reference_potential.hpp"

namespace pdem {

/// Conditionally exactly solvable Kratzer potential on (0, inf):
///   U = 4 gamma^2 - 3/(16 y^2) - gamma / y.
/// The inverse-square coupling is pinned at -3/16. Near the origin the two
/// solution branches behave as y^{1/4} and y^{3/4}; the physical one is
/// y^{3/4}, which keeps only odd n in E_n = 4 gamma^2 - 4 gamma^2 / (2n+1)^2.
class Kratzer final : public ReferencePotential {
public:
    static constexpr double kInverseSquareCoupling = -3.0 / 16.0;
    static constexpr double kOriginExponent = 0.75;
    /// Cutoff near the origin where the y^{3/4} closure is imposed.
    static constexpr double kOriginCutoff = 1e-3;

    explicit Kratzer(double gamma) : gamma_(gamma) {
        if (!(gamma > 0.0)) throw ParameterError("Kratzer requires gamma > 0");
    }

    [[nodiscard]] double gamma() const noexcept { return gamma_; }

    /// Energy of level n (meaningful for odd n).
    [[nodiscard]] double level(int n) const noexcept {
        // 4g^2 (1 - 1/(2n+1)^2) = 16 g^2 n (n+1) / (2n+1)^2
        const double m = 2.0 * n + 1.0;
        return 16.0 * gamma_ * gamma_ * n * (n + 1.0) / (m * m);
    }

    std::string kind() const override { return "kratzer"; }
    std::string describe() const override { return "kratzer(gamma=" + std::to_string(gamma_) + ")"; }
    Interval domain() const override { return {0.0, kInf}; }

    double value(double y) const override {
        return 4.0 * gamma_ * gamma_ + kInverseSquareCoupling / (y * y) - gamma_ / y;
    }

    KnownSpectrum known_levels(int count) const override {
        KnownSpectrum out;
        for (int i = 0; i < count; ++i) {
            const int n = 2 * i + 1;
            out.levels.push_back({n, level(n)});
        }
        return out;
    }

    NumericBox numeric_box(int levels) const override {
        // Level n decays like exp(-2 gamma y / (2n+1)); put the wall 20 e-folds
        // of amplitude past the highest requested level.
        const int n_max = 2 * std::max(levels, 1) - 1;
        const double outer = 10.0 * (2.0 * n_max + 1.0) / gamma_;
        return {EdgeTreatment::frobenius(kOriginCutoff, kOriginExponent, 0.0),
                EdgeTreatment::dirichlet(outer)};
    }

private:
    double gamma_;
};

}  // namespace pdem
