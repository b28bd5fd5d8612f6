#pragma once

// First-order intertwining eta H = H1 eta with eta = A d/dx + B for a constant
// potential V0 in a position-dependent mass background, and the closed-form
// bound states of the sech^2 mass built from Legendre polynomials.

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pdem/error.hpp"
#include "pdem/grid.hpp"
#include "pdem/mass.hpp"
#include "pdem/ordering.hpp"
#include "pdem/problem.hpp"

namespace pdem {

struct LegendreValue {
    double p;
    double dp;
};

/// P_n(t) and P_n'(t) by the three-term recurrence
/// (k+1) P_{k+1} = (2k+1) t P_k - k P_{k-1}.
[[nodiscard]] inline LegendreValue legendre(int n, double t) {
    if (n < 0) throw ParameterError("legendre: degree must be >= 0");
    if (!(std::abs(t) <= 1.0)) throw DomainError("legendre: |t| > 1");
    if (n == 0) return {1.0, 0.0};
    double prev = 1.0;
    double cur = t;
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0) * t * cur - k * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    double dp;
    if (std::abs(t) == 1.0) {
        // P_n'(+-1) = (+-1)^{n-1} n (n+1) / 2
        dp = 0.5 * n * (n + 1.0) * ((n % 2 == 1 || t > 0.0) ? 1.0 : -1.0);
    } else {
        dp = n * (prev - t * cur) / (1.0 - t * t);
    }
    return {cur, dp};
}

/// Bound state n of -d/dx cosh^2(qx) d/dx - q^2 cosh^2(qx) (ZK free particle in
/// the sech^2 mass) and, for n >= 1, its partner state n-1 of the BDD operator.
/// Both are unit-L2 normalized and positive as x -> +infinity.
class FreeParticleState {
public:
    FreeParticleState(double q, int n) : q_(q), n_(n) {
        if (!(q > 0.0)) throw ParameterError("free_particle_states: q must be > 0");
        if (n < 0) throw ParameterError("free_particle_states: n must be >= 0");
        // int sech^2 P_n(tanh)^2 dx = 2 / (q (2n+1))
        psi_norm_ = std::sqrt(0.5 * q * (2.0 * n + 1.0));
        // int q^2 sech^4 P_n'(tanh)^2 dx = q * 2 n (n+1) / (2n+1)
        if (n >= 1) phi_norm_ = 1.0 / std::sqrt(q * 2.0 * n * (n + 1.0) / (2.0 * n + 1.0));
    }

    [[nodiscard]] double q() const noexcept { return q_; }
    [[nodiscard]] int n() const noexcept { return n_; }

    /// E'_n = q^2 n (n+1), measured from V0.
    [[nodiscard]] double energy() const noexcept { return q_ * q_ * n_ * (n_ + 1.0); }

    /// psi_n(x) = N sech(qx) P_n(tanh qx)
    [[nodiscard]] double psi(double x) const {
        const double qx = q_ * x;
        return psi_norm_ / std::cosh(qx) * legendre(n_, std::tanh(qx)).p;
    }

    [[nodiscard]] bool has_partner() const noexcept { return n_ >= 1; }

    /// phi_{n-1}(x) = N q sech^2(qx) P_n'(tanh qx)
    [[nodiscard]] double partner(double x) const {
        if (!has_partner()) throw ParameterError("free_particle_states: n = 0 has no partner state");
        const double qx = q_ * x;
        const double s = 1.0 / std::cosh(qx);
        return phi_norm_ * q_ * s * s * legendre(n_, std::tanh(qx)).dp;
    }

private:
    double q_;
    int n_;
    double psi_norm_;
    double phi_norm_ = 0.0;
};

[[nodiscard]] inline FreeParticleState free_particle_states(double q, int n) { return {q, n}; }

/// eta = A d/dx + B with A = M^{-1/2}, B = -(beta+1) M' / (2 M^{3/2}) and
/// beta = -2 alpha - 1. `lambda0` is the integration constant of the
/// factorization V_eff = lambda0 + B^2 - (AB)'.
class Intertwiner {
public:
    Intertwiner(double alpha, MassProfile profile, double lambda0)
        : alpha_(alpha), profile_(profile), lambda0_(lambda0) {}

    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] double beta() const noexcept { return -2.0 * alpha_ - 1.0; }
    [[nodiscard]] double lambda0() const noexcept { return lambda0_; }
    [[nodiscard]] const MassProfile& profile() const noexcept { return profile_; }
    [[nodiscard]] OrderingParams ordering() const noexcept { return {alpha_, beta()}; }

    [[nodiscard]] double a(double x) const { return 1.0 / profile_.eval(x).sqrt_m; }

    [[nodiscard]] double b(double x) const {
        const MassValues mv = profile_.eval(x);
        return -0.5 * (beta() + 1.0) * mv.dm / (mv.m * mv.sqrt_m);
    }

    /// lambda0 + B^2 - (AB)' with the derivative taken analytically.
    [[nodiscard]] double veff(double x) const {
        const MassValues mv = profile_.eval(x);
        const double m2 = mv.m * mv.m;
        const double bp1 = beta() + 1.0;
        const double bb = 0.25 * bp1 * bp1 * mv.dm * mv.dm / (m2 * mv.m);
        // AB = -(beta+1) M' / (2 M^2)
        const double ab_prime = -0.5 * bp1 * (mv.d2m / m2 - 2.0 * mv.dm * mv.dm / (m2 * mv.m));
        return lambda0_ + bb - ab_prime;
    }

    /// V_eff + 2 A B' - A A''.
    [[nodiscard]] double v1eff(double x) const {
        const MassValues mv = profile_.eval(x);
        const double m2 = mv.m * mv.m;
        const double m3 = m2 * mv.m;
        const double bp1 = beta() + 1.0;
        const double two_a_bprime = -bp1 * (mv.d2m / m2 - 1.5 * mv.dm * mv.dm / m3);
        const double a_a2 = -0.5 * mv.d2m / m2 + 0.75 * mv.dm * mv.dm / m3;
        return veff(x) + two_a_bprime - a_a2;
    }

    /// psi'/psi of the state annihilated by eta: -B/A = -alpha M'/M.
    [[nodiscard]] double zero_mode_log_derivative(double x) const {
        const MassValues mv = profile_.eval(x);
        return -alpha_ * mv.dm / mv.m;
    }

    /// eta f at interior nodes 1..n by central differences; entries 0 and n+1 are 0.
    [[nodiscard]] std::vector<double> apply(const std::vector<double>& f, const Grid& grid) const {
        const int n = grid.n();
        const double h = grid.h();
        std::vector<double> out(n + 2, 0.0);
        for (int i = 1; i <= n; ++i) {
            const double x = grid.node(i);
            out[i] = a(x) * (f[i + 1] - f[i - 1]) / (2.0 * h) + b(x) * f[i];
        }
        return out;
    }

private:
    double alpha_;
    MassProfile profile_;
    double lambda0_;
};

[[nodiscard]] inline Intertwiner build_intertwiner(double alpha, const MassProfile& profile, double lambda0) {
    return {alpha, profile, lambda0};
}

/// Closed-form partner pair for a constant potential V0:
///   V_eff  = V0 - alpha M''/M^2 + alpha(alpha+2) M'^2/M^3
///   V1_eff = V0 + (alpha+1/2) M''/M^2 + (alpha+1/2)(alpha-3/2) M'^2/M^3
[[nodiscard]] inline std::pair<double, double> partner_potentials(double alpha, const MassProfile& profile,
                                                                  double v0, double x) {
    const MassValues mv = profile.eval(x);
    const double m2 = mv.m * mv.m;
    const double r2 = mv.d2m / m2;
    const double r1 = mv.dm * mv.dm / (m2 * mv.m);
    const double ap = alpha + 0.5;
    return {v0 - alpha * r2 + alpha * (alpha + 2.0) * r1, v0 + ap * r2 + ap * (alpha - 1.5) * r1};
}

/// H and H1 of the free-particle intertwining as solver problems.
[[nodiscard]] inline std::pair<PDEMProblem, PDEMProblem> partner_problems(double alpha, const MassProfile& profile,
                                                                          double v0, Interval domain) {
    PDEMProblem h{profile, [=](double x) { return partner_potentials(alpha, profile, v0, x).first; },
                  domain.intersect(profile.domain()), 1.0, "free particle H"};
    PDEMProblem h1{profile, [=](double x) { return partner_potentials(alpha, profile, v0, x).second; },
                   h.domain, 1.0, "free particle H1"};
    return {std::move(h), std::move(h1)};
}

namespace detail {

/// (H f)_i = -(p_{i+1/2}(f_{i+1}-f_i) - p_{i-1/2}(f_i-f_{i-1}))/h^2 + V_eff(x_i) f_i, nodes 1..n.
inline std::vector<double> apply_hamiltonian(const PDEMProblem& problem, const std::vector<double>& f,
                                             const Grid& grid) {
    const int n = grid.n();
    const double h = grid.h();
    std::vector<double> out(n + 2, 0.0);
    double p_left = 1.0 / problem.profile.eval(grid.xmin() + 0.5 * h).m;
    for (int i = 1; i <= n; ++i) {
        const double x = grid.node(i);
        const double p_right = 1.0 / problem.profile.eval(x + 0.5 * h).m;
        out[i] = -(p_right * (f[i + 1] - f[i]) - p_left * (f[i] - f[i - 1])) / (h * h) + problem.veff(x) * f[i];
        p_left = p_right;
    }
    return out;
}

inline std::vector<double> sample(const std::function<double(double)>& fn, const Grid& grid) {
    std::vector<double> f(grid.n() + 2);
    for (int i = 0; i <= grid.n() + 1; ++i) f[i] = fn(grid.node(i));
    return f;
}

inline double intertwining_residual(const Intertwiner& eta, const PDEMProblem& h, const PDEMProblem& h1,
                                    const std::function<double(double)>& testfn, const Grid& grid) {
    const auto f = sample(testfn, grid);
    const auto eta_hf = eta.apply(apply_hamiltonian(h, f, grid), grid);
    const auto h1_etaf = apply_hamiltonian(h1, eta.apply(f, grid), grid);
    double worst = 0.0;
    // composite stencils reach two nodes out: skip the first and last interior node
    for (int i = 2; i < grid.n(); ++i) worst = std::max(worst, std::abs(eta_hf[i] - h1_etaf[i]));
    return worst;
}

}  // namespace detail

struct ConvergenceCheck {
    double coarse;
    double fine;
    double ratio;
};

/// ||(eta H - H1 eta) f||_inf on `grid` and `grid.refined()`. The test function
/// must vanish near the grid ends. Throws NumericError when the residual does
/// not shrink by kMinRefinementGain while above round-off level.
inline ConvergenceCheck verify_intertwining(const Intertwiner& eta, const PDEMProblem& h, const PDEMProblem& h1,
                                            const std::function<double(double)>& testfn, const Grid& grid,
                                            double roundoff_floor = 1e-9) {
    const double coarse = detail::intertwining_residual(eta, h, h1, testfn, grid);
    const double fine = detail::intertwining_residual(eta, h, h1, testfn, grid.refined());
    if (coarse > roundoff_floor && !(fine * kMinRefinementGain < coarse)) {
        throw NumericError("intertwining residual not decreasing under refinement (" + std::to_string(coarse) +
                           " -> " + std::to_string(fine) + ")");
    }
    return {coarse, fine, fine > 0.0 ? coarse / fine : std::numeric_limits<double>::infinity()};
}

/// ||eta f||_inf on `grid` and `grid.refined()`; tends to zero when f is the
/// state annihilated by eta.
inline ConvergenceCheck annihilation_residual(const Intertwiner& eta, const std::function<double(double)>& f,
                                              const Grid& grid) {
    auto one = [&](const Grid& g) {
        const auto ef = eta.apply(detail::sample(f, g), g);
        double worst = 0.0;
        for (int i = 1; i <= g.n(); ++i) worst = std::max(worst, std::abs(ef[i]));
        return worst;
    };
    const double coarse = one(grid);
    const double fine = one(grid.refined());
    return {coarse, fine, fine > 0.0 ? coarse / fine : std::numeric_limits<double>::infinity()};
}

}  // namespace pdem
