#pragma once

// Coordinate-transform pipeline: a constant-mass problem -phi'' + U(y) phi =
// eps phi with y = lambda z(x) + nu becomes a position-dependent-mass problem
// in x with
//   V_eff(x) = lambda^2 U(lambda z(x) + nu) + M''/(4M^2) - 7M'^2/(16M^3),
// energies E = lambda^2 eps and psi(x) = M^{1/4} phi(y(x)).

#include <cmath>
#include <functional>
#include <string>
#include <utility>

#include "pdem/boundary.hpp"
#include "pdem/error.hpp"
#include "pdem/interval.hpp"
#include "pdem/mass.hpp"
#include "pdem/ordering.hpp"
#include "pdem/potentials.hpp"
#include "pdem/problem.hpp"

namespace pdem {

class TransformSpec {
public:
    TransformSpec(PotentialModel model, MassProfile profile, double lambda = 1.0, double nu = 0.0)
        : model_(std::move(model)), profile_(profile), lambda_(lambda), nu_(nu) {
        if (!(lambda != 0.0) || !std::isfinite(lambda)) {
            throw ParameterError("transform: lambda must be finite and nonzero");
        }
        if (!std::isfinite(nu)) throw ParameterError("transform: nu must be finite");
        x_domain_ = compute_domain();
        if (x_domain_.empty()) {
            throw ParameterError("transform: no x maps into the domain of " + model_.describe());
        }
    }

    [[nodiscard]] const PotentialModel& model() const noexcept { return model_; }
    [[nodiscard]] const MassProfile& profile() const noexcept { return profile_; }
    [[nodiscard]] double lambda() const noexcept { return lambda_; }
    [[nodiscard]] double nu() const noexcept { return nu_; }

    /// {x : lambda z(x) + nu in model domain}.
    [[nodiscard]] const Interval& x_domain() const noexcept { return x_domain_; }

    [[nodiscard]] double y_of(double x) const { return lambda_ * profile_.zmap(x) + nu_; }

    [[nodiscard]] double x_of(double y) const { return profile_.zmap_inverse((y - nu_) / lambda_); }

private:
    Interval compute_domain() const {
        const Interval ym = model_.domain();
        const auto* scarf = model_.as<ScarfI>();
        const auto* rational = std::get_if<MassProfile::RationalSu11>(&profile_.kind());
        if (scarf && rational && lambda_ == 1.0 && nu_ == 0.0) {
            const double xq = solve_xq(rational->q);
            return {-xq, xq};
        }
        // z-interval mapped into the model domain, clipped to the range of z
        Interval zi = lambda_ > 0.0 ? Interval{(ym.lo - nu_) / lambda_, (ym.hi - nu_) / lambda_}
                                    : Interval{(ym.hi - nu_) / lambda_, (ym.lo - nu_) / lambda_};
        const Interval zr = profile_.z_range();
        zi = zi.intersect(zr);
        if (zi.empty()) return {0.0, 0.0};
        const Interval dom = profile_.domain();
        const double lo = zi.lo <= zr.lo ? dom.lo : profile_.zmap_inverse(zi.lo);
        const double hi = zi.hi >= zr.hi ? dom.hi : profile_.zmap_inverse(zi.hi);
        return {lo, hi};
    }

    PotentialModel model_;
    MassProfile profile_;
    double lambda_;
    double nu_;
    Interval x_domain_;
};

[[nodiscard]] inline double transform_energy(double lambda, double epsilon) noexcept {
    return lambda * lambda * epsilon;
}

/// V2(x) = lambda^2 U(lambda z(x) + nu).
[[nodiscard]] inline double v2(const TransformSpec& spec, double x) {
    if (!spec.profile().domain().contains(x)) {
        throw DomainError("v2: x = " + std::to_string(x) + " outside the mass domain");
    }
    const double y = spec.y_of(x);
    const Interval ym = spec.model().domain();
    if (!ym.contains(y)) {
        const Interval& xd = spec.x_domain();
        throw DomainError("v2: x = " + std::to_string(x) + " maps to y = " + std::to_string(y) +
                          " outside the domain of " + spec.model().describe() +
                          "; lambda z(x) + nu must stay inside, i.e. x in (" + std::to_string(xd.lo) +
                          ", " + std::to_string(xd.hi) + ")");
    }
    return spec.lambda() * spec.lambda() * spec.model()(y);
}

/// V(x) = V1(x; alpha, beta) + V2(x).
[[nodiscard]] inline double full_potential(const TransformSpec& spec, const OrderingParams& params, double x) {
    const double pot = v2(spec, x);
    return v1(params, spec.profile(), x) + pot;
}

/// V_eff reached through the ordering route: the full potential plus the
/// ordering-dependent mass terms. Equals build_pdem(spec).veff for every ordering.
[[nodiscard]] inline double veff_via_ordering(const TransformSpec& spec, const OrderingParams& params,
                                              double x) {
    return full_potential(spec, params, x) + veff_mass_terms(params, spec.profile(), x);
}

[[nodiscard]] inline PDEMProblem build_pdem(const TransformSpec& spec) {
    PDEMProblem p;
    p.profile = spec.profile();
    p.domain = spec.x_domain();
    p.energy_scale = spec.lambda() * spec.lambda();
    p.description = spec.model().describe() + " under " + spec.profile().name();
    p.veff = [spec](double x) { return v2(spec, x) + transform_mass_terms(spec.profile().eval(x)); };
    return p;
}

/// Problem for a potential V(x) given directly in x:
/// V_eff = V + 1/2 (beta+1) M''/M^2 - [alpha(alpha+beta+1) + beta + 1] M'^2/M^3.
[[nodiscard]] inline PDEMProblem build_pdem_direct(std::function<double(double)> potential,
                                                   const MassProfile& profile, const OrderingParams& params,
                                                   Interval domain, std::string description = "direct") {
    PDEMProblem p;
    p.profile = profile;
    p.domain = domain.intersect(profile.domain());
    if (p.domain.empty()) throw ParameterError("build_pdem_direct: empty domain");
    p.description = std::move(description);
    p.veff = [potential = std::move(potential), profile, params](double x) {
        return potential(x) + veff_mass_terms(params, profile, x);
    };
    return p;
}

/// psi(x) = M(x)^{1/4} phi(lambda z(x) + nu).
template <typename Phi>
[[nodiscard]] double pull_back_wavefunction(const TransformSpec& spec, const Phi& phi, double x) {
    if (!spec.x_domain().contains(x)) {
        throw DomainError("pull_back_wavefunction: x = " + std::to_string(x) + " outside effective domain");
    }
    const MassValues mv = spec.profile().eval(x);
    return std::sqrt(mv.sqrt_m) * phi(spec.y_of(x));
}

/// Truncated x-interval and boundary closures for solving a transformed
/// problem numerically, derived from the reference model's edge treatment.
struct SolverBox {
    double xmin;
    double xmax;
    BoundarySpec bc;
};

namespace detail {

inline BoundaryCondition pull_back_edge(const TransformSpec& spec, const EdgeTreatment& edge) {
    if (edge.kind == EdgeTreatment::Kind::Dirichlet) return BoundaryCondition::dirichlet();
    // phi ~ |y - y_s|^s with y - y_s ~ lambda sqrt(M(x_s)) (x - x_s) keeps the exponent.
    return BoundaryCondition::frobenius(edge.exponent, spec.x_of(edge.singular_point));
}

}  // namespace detail

[[nodiscard]] inline SolverBox solver_box(const TransformSpec& spec, int levels) {
    const NumericBox box = spec.model().numeric_box(levels);
    const double xa = spec.x_of(box.left.cutoff);
    const double xb = spec.x_of(box.right.cutoff);
    const BoundaryCondition ca = detail::pull_back_edge(spec, box.left);
    const BoundaryCondition cb = detail::pull_back_edge(spec, box.right);
    if (spec.lambda() > 0.0) return {xa, xb, {ca, cb}};
    return {xb, xa, {cb, ca}};
}

}  // namespace pdem
