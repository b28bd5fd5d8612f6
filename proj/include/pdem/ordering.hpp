#pragma once

// von Roos ordering ambiguity: the (alpha, beta, gamma) triple with
// alpha + beta + gamma = -1, the mass terms it adds to the effective
// potential, and the V1 piece of the split V = V1 + V2.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "pdem/error.hpp"
#include "pdem/grid.hpp"
#include "pdem/mass.hpp"

namespace pdem {

enum class OrderingPreset { BDD, Bastard, ZK, Redistributed, LiKuhnDual, Custom };

[[nodiscard]] inline std::string_view to_string(OrderingPreset p) noexcept {
    switch (p) {
        case OrderingPreset::BDD: return "BDD";
        case OrderingPreset::Bastard: return "Bastard";
        case OrderingPreset::ZK: return "ZK";
        case OrderingPreset::Redistributed: return "Redistributed";
        case OrderingPreset::LiKuhnDual: return "LiKuhnDual";
        case OrderingPreset::Custom: return "Custom";
    }
    return "Custom";
}

/// Ordering parameters. gamma is always derived: gamma = -1 - alpha - beta.
class OrderingParams {
public:
    constexpr OrderingParams(double alpha, double beta) noexcept
        : alpha_(alpha), beta_(beta), preset_(OrderingPreset::Custom) {}

    static constexpr OrderingParams bdd() noexcept { return {0.0, -1.0, OrderingPreset::BDD}; }
    static constexpr OrderingParams bastard() noexcept { return {-1.0, 0.0, OrderingPreset::Bastard}; }
    static constexpr OrderingParams zk() noexcept { return {-0.5, 0.0, OrderingPreset::ZK}; }
    static constexpr OrderingParams redistributed() noexcept {
        return {0.0, -0.5, OrderingPreset::Redistributed};
    }
    /// beta of the redistributed model with alpha = -1/4: the pair for which
    /// V1 vanishes identically for every mass profile.
    static constexpr OrderingParams li_kuhn_dual() noexcept {
        return {-0.25, -0.5, OrderingPreset::LiKuhnDual};
    }

    static OrderingParams preset(OrderingPreset p) {
        switch (p) {
            case OrderingPreset::BDD: return bdd();
            case OrderingPreset::Bastard: return bastard();
            case OrderingPreset::ZK: return zk();
            case OrderingPreset::Redistributed: return redistributed();
            case OrderingPreset::LiKuhnDual: return li_kuhn_dual();
            case OrderingPreset::Custom: break;
        }
        throw ParameterError("Custom ordering has no preset values; give alpha and beta");
    }

    [[nodiscard]] constexpr double alpha() const noexcept { return alpha_; }
    [[nodiscard]] constexpr double beta() const noexcept { return beta_; }
    [[nodiscard]] constexpr double gamma() const noexcept { return -1.0 - alpha_ - beta_; }
    [[nodiscard]] constexpr OrderingPreset tag() const noexcept { return preset_; }

    /// Coefficient alpha(alpha + beta + 1) + beta + 1 of M'^2/M^3 in the mass terms.
    [[nodiscard]] constexpr double mixed_coefficient() const noexcept {
        return alpha_ * (alpha_ + beta_ + 1.0) + beta_ + 1.0;
    }

    /// Image under alpha -> -(alpha + 1/2) on the free-particle line beta = -2 alpha - 1.
    [[nodiscard]] constexpr OrderingParams free_particle_dual() const noexcept {
        const double a = -(alpha_ + 0.5);
        return {a, -2.0 * a - 1.0};
    }

private:
    constexpr OrderingParams(double alpha, double beta, OrderingPreset tag) noexcept
        : alpha_(alpha), beta_(beta), preset_(tag) {}

    double alpha_;
    double beta_;
    OrderingPreset preset_;
};

/// V1 = f M'^2/M^3 - g M''/M^2.
struct V1Coefficients {
    double f;
    double g;

    static constexpr V1Coefficients of(const OrderingParams& p) noexcept {
        const double a = p.alpha() + 0.25;
        return {a * a + 0.5 * (p.alpha() + 1.0) * (2.0 * p.beta() + 1.0), 0.25 * (2.0 * p.beta() + 1.0)};
    }
};

/// Mass terms of the effective potential:
/// 1/2 (beta+1) M''/M^2 - [alpha(alpha+beta+1) + beta + 1] M'^2/M^3.
[[nodiscard]] inline double veff_mass_terms(const OrderingParams& p, const MassValues& mv) noexcept {
    const double m2 = mv.m * mv.m;
    return 0.5 * (p.beta() + 1.0) * mv.d2m / m2 - p.mixed_coefficient() * mv.dm * mv.dm / (m2 * mv.m);
}

[[nodiscard]] inline double veff_mass_terms(const OrderingParams& p, const MassProfile& profile,
                                            double x) {
    return veff_mass_terms(p, profile.eval(x));
}

/// Ordering-independent mass terms picked up by the coordinate transform:
/// M''/(4M^2) - 7M'^2/(16M^3).
[[nodiscard]] inline double transform_mass_terms(const MassValues& mv) noexcept {
    const double m2 = mv.m * mv.m;
    return 0.25 * mv.d2m / m2 - 0.4375 * mv.dm * mv.dm / (m2 * mv.m);
}

[[nodiscard]] inline double v1(const OrderingParams& p, const MassValues& mv) noexcept {
    const auto [f, g] = V1Coefficients::of(p);
    const double m2 = mv.m * mv.m;
    return f * mv.dm * mv.dm / (m2 * mv.m) - g * mv.d2m / m2;
}

[[nodiscard]] inline double v1(const OrderingParams& p, const MassProfile& profile, double x) {
    return v1(p, profile.eval(x));
}

/// Mass law for which V1 vanishes at a given ordering with beta != -1/2.
struct VanishingLaw {
    enum class Kind { Power, Exponential };
    Kind kind;
    double xi;  ///< exponent of M ~ x^xi; NaN for the exponential law

    [[nodiscard]] bool exponential() const noexcept { return kind == Kind::Exponential; }
};

inline constexpr double kFEqualsGTolerance = 1e-12;

[[nodiscard]] inline VanishingLaw vanishing_mass_exponent(const OrderingParams& p) {
    const auto [f, g] = V1Coefficients::of(p);
    if (g == 0.0) {
        throw ParameterError(
            "V1 already mass-independent in M'' term; use alpha = -1/4 test instead");
    }
    if (std::abs(f - g) < kFEqualsGTolerance) {
        return {VanishingLaw::Kind::Exponential, std::nan("")};
    }
    return {VanishingLaw::Kind::Power, 1.0 / (1.0 - f / g)};
}

/// beta = -2 alpha - 1: the line on which a constant potential admits a
/// first-order intertwiner with B = -(beta+1) M'/(2 M^{3/2}).
[[nodiscard]] inline bool on_free_particle_line(const OrderingParams& p, double tol = 1e-12) noexcept {
    return std::abs(p.beta() + 2.0 * p.alpha() + 1.0) < tol;
}

/// (alpha + 1/4)^2 + 1/2 (alpha + 1/2)(2 beta + 1) = 0, i.e. f = g: V1 vanishes
/// for exponential masses.
[[nodiscard]] inline bool on_exponential_law_line(const OrderingParams& p, double tol = 1e-12) noexcept {
    const double a = p.alpha() + 0.25;
    return std::abs(a * a + 0.5 * (p.alpha() + 0.5) * (2.0 * p.beta() + 1.0)) < tol;
}

/// Residuals of the operator reduction identity
///   M^a D M^b D M^c + M^c D M^b D M^a
///     = 2 D (1/M) D - (b+1) M''/M^2 + 2[a(a+b+1)+b+1] M'^2/M^3
/// on a grid and on its refinement.
/// Smallest coarse/fine residual ratio accepted as convergence (second order gives 4).
inline constexpr double kMinRefinementGain = 1.5;

struct IdentityCheck {
    double residual_coarse;
    double residual_fine;
    double ratio;  ///< coarse / fine, about 4 for a second-order scheme
    double order;  ///< log2(ratio)
};

namespace detail {

/// (c_{i+1/2}(u_{i+1}-u_i) - c_{i-1/2}(u_i-u_{i-1})) / h^2 at nodes 1..n.
inline std::vector<double> flux_divergence(const std::vector<double>& c_mid, const std::vector<double>& u,
                                           double h) {
    const std::size_t n = u.size() - 2;
    std::vector<double> out(n + 2, 0.0);
    const double inv_h2 = 1.0 / (h * h);
    for (std::size_t i = 1; i <= n; ++i) {
        out[i] = (c_mid[i] * (u[i + 1] - u[i]) - c_mid[i - 1] * (u[i] - u[i - 1])) * inv_h2;
    }
    return out;
}

inline double identity_residual(const OrderingParams& p, const MassProfile& profile,
                                 const std::function<double(double)>& testfn, const Grid& grid) {
    const int n = grid.n();
    const double h = grid.h();
    const double a = p.alpha(), b = p.beta(), c = p.gamma();
    std::vector<MassValues> node_mass(n + 2);
    std::vector<double> psi(n + 2), u_a(n + 2), u_c(n + 2);
    for (int i = 0; i <= n + 1; ++i) {
        const double x = grid.node(i);
        node_mass[i] = profile.eval(x);
        psi[i] = testfn(x);
        u_c[i] = std::pow(node_mass[i].m, c) * psi[i];
        u_a[i] = std::pow(node_mass[i].m, a) * psi[i];
    }
    std::vector<double> mb_mid(n + 1), inv_m_mid(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double m = profile.eval(grid.node(i) + 0.5 * h).m;
        mb_mid[i] = std::pow(m, b);
        inv_m_mid[i] = 1.0 / m;
    }
    const auto inner_c = flux_divergence(mb_mid, u_c, h);
    const auto inner_a = flux_divergence(mb_mid, u_a, h);
    const auto kinetic = flux_divergence(inv_m_mid, psi, h);
    const double k2 = 2.0 * p.mixed_coefficient();
    double worst = 0.0;
    for (int i = 1; i <= n; ++i) {
        const auto& mv = node_mass[i];
        const double lhs = std::pow(mv.m, a) * inner_c[i] + std::pow(mv.m, c) * inner_a[i];
        const double m2 = mv.m * mv.m;
        const double rhs = 2.0 * kinetic[i] - (b + 1.0) * mv.d2m / m2 * psi[i] +
                           k2 * mv.dm * mv.dm / (m2 * mv.m) * psi[i];
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

}  // namespace detail

/// Applies both sides of the reduction identity to `testfn` with staggered
/// central differences on `grid` and on `grid.refined()`. The test function
/// must vanish near the grid ends (no one-sided stencils are used).
/// Throws NumericError when halving h shrinks the residual by less than
/// kMinRefinementGain while it is still above round-off level.
inline IdentityCheck verify_operator_identity(const OrderingParams& p, const MassProfile& profile,
                                              const std::function<double(double)>& testfn,
                                              const Grid& grid, double roundoff_floor = 1e-9) {
    const double coarse = detail::identity_residual(p, profile, testfn, grid);
    const double fine = detail::identity_residual(p, profile, testfn, grid.refined());
    if (coarse > roundoff_floor && !(fine * kMinRefinementGain < coarse)) {
        throw NumericError("operator identity: residual not decreasing under refinement (" +
                           std::to_string(coarse) + " -> " + std::to_string(fine) +
                           "); grid too coarse or test function not smooth");
    }
    const double ratio = fine > 0.0 ? coarse / fine : std::numeric_limits<double>::infinity();
    return {coarse, fine, ratio, std::log2(ratio)};
}

}  // namespace pdem
