#pragma once

// Catalog of dimensionless mass profiles M(x) (m(x) = m0 M(x), hbar = 2 m0 = 1)
// with exact first and second derivatives and the coordinate map
// z(x) = integral of sqrt(M).

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <type_traits>
#include <variant>

#include "pdem/error.hpp"
#include "pdem/interval.hpp"
#include "pdem/numerics.hpp"

namespace pdem {

/// Below this value 1/M is treated as unusable by the discretization.
inline constexpr double kMassFloor = 1e-12;

struct MassValues {
    double m = 1.0;
    double dm = 0.0;
    double d2m = 0.0;
    double sqrt_m = 1.0;
    bool below_floor = false;
};

class MassProfile {
public:
    struct Constant {};
    /// M = sech^2(q x)
    struct SechSquared {
        double q;
    };
    /// M = (1 + q / (1 + x^2))^2
    struct RationalSu11 {
        double q;
    };
    /// M = x^xi on x > 0
    struct PowerLaw {
        double xi;
    };
    /// M = exp(sign * k * x), sign = +1 (rising) or -1 (falling)
    struct Exponential {
        double k;
        int sign;
    };

    using Kind = std::variant<Constant, SechSquared, RationalSu11, PowerLaw, Exponential>;

    MassProfile() = default;

    static MassProfile constant() { return MassProfile(Constant{}); }

    static MassProfile sech_squared(double q) {
        require_positive(q, "sech2 mass requires q > 0");
        return MassProfile(SechSquared{q});
    }

    static MassProfile rational_su11(double q) {
        require_positive(q, "rational su(1,1) mass requires q > 0");
        return MassProfile(RationalSu11{q});
    }

    static MassProfile power_law(double xi) {
        if (!std::isfinite(xi)) throw ParameterError("power-law mass requires a finite exponent");
        return MassProfile(PowerLaw{xi});
    }

    static MassProfile exponential(double k, int sign) {
        require_positive(k, "exponential mass requires k > 0");
        if (sign != 1 && sign != -1) throw ParameterError("exponential mass sign must be +1 or -1");
        return MassProfile(Exponential{k, sign});
    }

    [[nodiscard]] const Kind& kind() const noexcept { return kind_; }

    template <typename T>
    [[nodiscard]] bool is() const noexcept {
        return std::holds_alternative<T>(kind_);
    }

    [[nodiscard]] std::string name() const {
        return std::visit(
            [](const auto& k) -> std::string {
                using K = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<K, Constant>) return "constant";
                else if constexpr (std::is_same_v<K, SechSquared>) return "sech2(q=" + fmt(k.q) + ")";
                else if constexpr (std::is_same_v<K, RationalSu11>) return "rational(q=" + fmt(k.q) + ")";
                else if constexpr (std::is_same_v<K, PowerLaw>) return "power(xi=" + fmt(k.xi) + ")";
                else return std::string("exp(") + (k.sign > 0 ? "+" : "-") + "k=" + fmt(k.k) + ")";
            },
            kind_);
    }

    /// Open interval on which M is smooth and strictly positive.
    [[nodiscard]] Interval domain() const noexcept {
        if (is<PowerLaw>()) return {0.0, kInf};
        return {};
    }

    /// Point where z vanishes: 0, or 1 for the power law.
    [[nodiscard]] double z_anchor() const noexcept { return is<PowerLaw>() ? 1.0 : 0.0; }

    [[nodiscard]] MassValues eval(double x) const {
        check_domain(x);
        MassValues v = std::visit([x](const auto& k) { return eval_kind(k, x); }, kind_);
        v.below_floor = !(v.m >= kMassFloor);
        return v;
    }

    /// z(x) in closed form for every catalog profile.
    [[nodiscard]] double zmap(double x) const {
        check_domain(x);
        return std::visit([x](const auto& k) { return zmap_kind(k, x); }, kind_);
    }

    /// z(x) by adaptive Simpson quadrature of sqrt(M) from the anchor.
    [[nodiscard]] double zmap_quadrature(double x, double tol = 1e-10) const {
        check_domain(x);
        return numerics::adaptive_simpson([this](double t) { return eval(t).sqrt_m; }, z_anchor(), x,
                                          tol);
    }

    /// Image of the domain under z.
    [[nodiscard]] Interval z_range() const noexcept {
        return std::visit(
            [](const auto& k) -> Interval {
                using K = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<K, SechSquared>) {
                    const double half = 0.5 * std::numbers::pi / k.q;
                    return {-half, half};
                } else if constexpr (std::is_same_v<K, PowerLaw>) {
                    const double s = 0.5 * k.xi + 1.0;
                    if (s > 0.0) return {-1.0 / s, kInf};
                    if (s < 0.0) return {-kInf, -1.0 / s};
                    return {};
                } else if constexpr (std::is_same_v<K, Exponential>) {
                    const double lim = 2.0 / k.k;
                    return k.sign > 0 ? Interval{-lim, kInf} : Interval{-kInf, lim};
                } else {
                    return {};
                }
            },
            kind_);
    }

    /// x such that z(x) = z.
    [[nodiscard]] double zmap_inverse(double z) const {
        if (!z_range().contains(z)) {
            throw DomainError("zmap_inverse: z = " + fmt(z) + " outside the range of z for " + name());
        }
        return std::visit(
            [z](const auto& k) -> double {
                using K = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<K, Constant>) {
                    return z;
                } else if constexpr (std::is_same_v<K, SechSquared>) {
                    return std::asinh(std::tan(k.q * z)) / k.q;
                } else if constexpr (std::is_same_v<K, RationalSu11>) {
                    // |x - z| = q |atan x| < q pi / 2
                    const double w = 0.5 * std::numbers::pi * k.q + 1.0;
                    return numerics::bisect_root(
                        [&](double x) { return x + k.q * std::atan(x) - z; }, z - w, z + w,
                        1e-15 * (1.0 + std::abs(z)));
                } else if constexpr (std::is_same_v<K, PowerLaw>) {
                    const double s = 0.5 * k.xi + 1.0;
                    if (s == 0.0) return std::exp(z);
                    return std::pow(s * z + 1.0, 1.0 / s);
                } else {
                    const double sk = k.sign * k.k;
                    return 2.0 / sk * std::log1p(0.5 * sk * z);
                }
            },
            kind_);
    }

private:
    explicit MassProfile(Kind k) : kind_(k) {}

    static void require_positive(double v, const char* msg) {
        if (!(v > 0.0) || !std::isfinite(v)) throw ParameterError(msg);
    }

    static std::string fmt(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", v);
        return buf;
    }

    void check_domain(double x) const {
        if (!std::isfinite(x) || !domain().contains(x)) {
            throw DomainError("mass profile " + name() + ": x = " + fmt(x) + " outside domain");
        }
    }

    static MassValues eval_kind(const Constant&, double) { return {}; }

    static MassValues eval_kind(const SechSquared& k, double x) {
        const double qx = k.q * x;
        const double sech = 1.0 / std::cosh(qx);
        const double th = std::tanh(qx);
        const double s2 = sech * sech;
        return {s2, -2.0 * k.q * s2 * th, 2.0 * k.q * k.q * s2 * (2.0 * th * th - s2), sech, false};
    }

    static MassValues eval_kind(const RationalSu11& k, double x) {
        const double w = 1.0 + x * x;
        const double u = 1.0 + k.q / w;
        const double du = -2.0 * k.q * x / (w * w);
        const double d2u = k.q * (6.0 * x * x - 2.0) / (w * w * w);
        return {u * u, 2.0 * u * du, 2.0 * du * du + 2.0 * u * d2u, u, false};
    }

    static MassValues eval_kind(const PowerLaw& k, double x) {
        const double m = std::pow(x, k.xi);
        return {m, k.xi * m / x, k.xi * (k.xi - 1.0) * m / (x * x), std::pow(x, 0.5 * k.xi), false};
    }

    static MassValues eval_kind(const Exponential& k, double x) {
        const double sk = k.sign * k.k;
        const double m = std::exp(sk * x);
        return {m, sk * m, k.k * k.k * m, std::exp(0.5 * sk * x), false};
    }

    static double zmap_kind(const Constant&, double x) { return x; }

    static double zmap_kind(const SechSquared& k, double x) {
        return std::atan(std::sinh(k.q * x)) / k.q;
    }

    static double zmap_kind(const RationalSu11& k, double x) { return x + k.q * std::atan(x); }

    static double zmap_kind(const PowerLaw& k, double x) {
        const double s = 0.5 * k.xi + 1.0;
        if (s == 0.0) return std::log(x);
        return std::expm1(s * std::log(x)) / s;
    }

    static double zmap_kind(const Exponential& k, double x) {
        const double sk = k.sign * k.k;
        return 2.0 / sk * std::expm1(0.5 * sk * x);
    }

    Kind kind_{Constant{}};
};

}  // namespace pdem
