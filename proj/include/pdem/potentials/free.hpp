#pragma once

#include "pdem/reference_potential.hpp"

namespace pdem {

/// U = V0 everywhere.
class FreeConstant final : public ReferencePotential {
public:
    explicit FreeConstant(double v0 = 0.0) : v0_(v0) {}

    [[nodiscard]] double v0() const noexcept { return v0_; }

    std::string kind() const override { return "free"; }
    std::string describe() const override { return "free(V0=" + std::to_string(v0_) + ")"; }
    Interval domain() const override { return {}; }
    double value(double) const override { return v0_; }

    KnownSpectrum known_levels(int) const override {
        throw ParameterError("no discrete constant-mass spectrum");
    }

    NumericBox numeric_box(int) const override {
        throw ParameterError("free potential has no bound states to box at constant mass");
    }

private:
    double v0_;
};

}  // namespace pdem
