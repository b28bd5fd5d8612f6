#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "pdem/error.hpp"
#include "pdem/interval.hpp"

namespace pdem {

struct EnergyLevel {
    int n;
    double energy;

    friend bool operator==(const EnergyLevel&, const EnergyLevel&) = default;
};

struct KnownSpectrum {
    std::vector<EnergyLevel> levels;
    /// Set for quasi-exactly solvable models: only the listed levels are known.
    bool quasi_exact = false;
};

/// How a numerical solver closes the y-domain at one end.
struct EdgeTreatment {
    enum class Kind { Dirichlet, Frobenius };

    double cutoff;  ///< y-position of the truncated boundary
    Kind kind = Kind::Dirichlet;
    /// Frobenius: phi ~ |y - singular_point|^exponent near the end.
    double exponent = 0.0;
    double singular_point = 0.0;

    static EdgeTreatment dirichlet(double y) { return {y, Kind::Dirichlet, 0.0, 0.0}; }
    static EdgeTreatment frobenius(double y, double exponent, double singular_point) {
        return {y, Kind::Frobenius, exponent, singular_point};
    }
};

struct NumericBox {
    EdgeTreatment left;
    EdgeTreatment right;
};

/// Constant-mass reference potential U(y; a) with its natural domain.
/// Implementations are immutable.
class ReferencePotential {
public:
    virtual ~ReferencePotential() = default;

    [[nodiscard]] virtual std::string kind() const = 0;
    [[nodiscard]] virtual std::string describe() const = 0;
    [[nodiscard]] virtual Interval domain() const = 0;
    /// U(y) without domain checking.
    [[nodiscard]] virtual double value(double y) const = 0;
    [[nodiscard]] virtual KnownSpectrum known_levels(int count) const = 0;
    /// Truncation and closure suitable for resolving the lowest `levels` states.
    [[nodiscard]] virtual NumericBox numeric_box(int levels) const = 0;
};

/// Value handle over an immutable ReferencePotential.
class PotentialModel {
public:
    explicit PotentialModel(std::shared_ptr<const ReferencePotential> impl) : impl_(std::move(impl)) {
        if (!impl_) throw ParameterError("PotentialModel: null implementation");
    }

    template <typename T, typename... Args>
    static PotentialModel make(Args&&... args) {
        return PotentialModel(std::make_shared<const T>(std::forward<Args>(args)...));
    }

    [[nodiscard]] std::string kind() const { return impl_->kind(); }
    [[nodiscard]] std::string describe() const { return impl_->describe(); }
    [[nodiscard]] Interval domain() const { return impl_->domain(); }

    [[nodiscard]] double operator()(double y) const {
        if (!domain().contains(y)) {
            throw DomainError(describe() + ": y = " + std::to_string(y) + " outside natural domain");
        }
        return impl_->value(y);
    }

    [[nodiscard]] KnownSpectrum known_levels(int count) const {
        if (count < 1) throw ParameterError("known_levels: count must be >= 1");
        return impl_->known_levels(count);
    }

    [[nodiscard]] NumericBox numeric_box(int levels) const { return impl_->numeric_box(levels); }

    /// Access to the concrete model, or nullptr if it is not a T.
    template <typename T>
    [[nodiscard]] const T* as() const noexcept {
        return dynamic_cast<const T*>(impl_.get());
    }

private:
    std::shared_ptr<const ReferencePotential> impl_;
};

}  // namespace pdem
