#pragma once

// Invariant suites shared by `pdem verify <suite>` and the test binaries.

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "pdem/error.hpp"
#include "pdem/grid.hpp"
#include "pdem/intertwine.hpp"
#include "pdem/mass.hpp"
#include "pdem/ordering.hpp"
#include "pdem/potentials.hpp"
#include "pdem/sl_solver.hpp"
#include "pdem/xform.hpp"

namespace pdem::verify {

struct Check {
    std::string name;
    double value;
    double threshold;  ///< upper bound
    bool pass;
    double lower = std::numeric_limits<double>::quiet_NaN();  ///< set for range checks
};

inline bool all_pass(const std::vector<Check>& checks) {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

/// value < threshold
inline Check below(std::string name, double value, double threshold) {
    return {std::move(name), value, threshold, std::isfinite(value) && value < threshold};
}

/// lo <= value <= hi
inline Check within(std::string name, double value, double lo, double hi) {
    return {std::move(name), value, hi, value >= lo && value <= hi, lo};
}

/// Refinement ratio of a second-order residual under h -> h/2.
inline Check second_order(std::string name, double ratio) { return within(std::move(name), ratio, 3.5, 4.5); }

/// A profile with an interval on which test functions and samples live.
struct ProfileCase {
    MassProfile profile;
    double lo;
    double hi;
};

/// One of each catalog kind, with a sampling window inside its domain.
inline std::vector<ProfileCase> catalog_cases() {
    return {
        {MassProfile::constant(), -4.0, 4.0},
        {MassProfile::sech_squared(1.0), -4.0, 4.0},
        {MassProfile::rational_su11(0.5), -4.0, 4.0},
        {MassProfile::power_law(-4.0 / 3.0), 0.5, 4.5},
        {MassProfile::exponential(0.5, 1), -3.0, 3.0},
        {MassProfile::exponential(0.5, -1), -3.0, 3.0},
    };
}

/// Gaussian centred in [lo, hi], about e^-25 at the ends.
inline std::function<double(double)> window_gaussian(double lo, double hi) {
    const double c = 0.5 * (lo + hi);
    const double w = 0.1 * (hi - lo);
    return [c, w](double x) {
        const double t = (x - c) / w;
        return std::exp(-t * t);
    };
}

inline std::vector<Check> identity4() {
    std::vector<Check> out;
    const OrderingParams orderings[] = {OrderingParams::bdd(), OrderingParams::zk(), OrderingParams::bastard(),
                                        OrderingParams(0.3, -0.9)};
    for (const auto& pc : catalog_cases()) {
        for (const auto& p : orderings) {
            const Grid grid(pc.lo, pc.hi, 199);
            char ab[64];
            std::snprintf(ab, sizeof ab, " (%g, %g)", p.alpha(), p.beta());
            const std::string label = pc.profile.name() + ab;
            const auto chk = verify_operator_identity(p, pc.profile, window_gaussian(pc.lo, pc.hi), grid);
            if (pc.profile.is<MassProfile::Constant>() || chk.residual_coarse < 1e-9) {
                // constant mass, or BDD, whose staggered form is exact
                out.push_back(below("residual " + label, chk.residual_fine, 1e-9));
            } else {
                out.push_back(second_order("ratio " + label, chk.ratio));
            }
        }
    }
    return out;
}

/// Partner potentials against the ordering mass terms, and their swap under
/// alpha -> -(alpha + 1/2).
inline std::vector<Check> duality(unsigned seed = 20240611u) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ua(-2.0, 2.0), uv(-3.0, 3.0), ut(0.0, 1.0);
    const auto cases = catalog_cases();
    double worst_h = 0.0, worst_h1 = 0.0, worst_swap = 0.0;
    for (int i = 0; i < 200; ++i) {
        const auto& pc = cases[i % cases.size()];
        const double alpha = ua(rng);
        const double v0 = uv(rng);
        const double x = pc.lo + (pc.hi - pc.lo) * ut(rng);
        const auto [veff, v1eff] = partner_potentials(alpha, pc.profile, v0, x);
        const double dual = -(alpha + 0.5);
        const auto [dveff, dv1eff] = partner_potentials(dual, pc.profile, v0, x);
        const double scale = 1.0 + std::abs(veff) + std::abs(v1eff);
        worst_h = std::max(worst_h,
                           std::abs(veff - v0 - veff_mass_terms({alpha, -2.0 * alpha - 1.0}, pc.profile, x)) / scale);
        worst_h1 = std::max(worst_h1,
                            std::abs(v1eff - v0 - veff_mass_terms({dual, -2.0 * dual - 1.0}, pc.profile, x)) / scale);
        worst_swap = std::max(worst_swap, (std::abs(dveff - v1eff) + std::abs(dv1eff - veff)) / scale);
    }
    return {below("H mass terms match ordering (alpha, -2alpha-1)", worst_h, 1e-12),
            below("H1 mass terms match dual ordering", worst_h1, 1e-12),
            below("alpha -> -(alpha+1/2) swaps H and H1", worst_swap, 1e-12)};
}

inline double max_abs_v1(const OrderingParams& p, const MassProfile& profile, double lo, double hi, int points = 500) {
    double worst = 0.0;
    for (int i = 0; i < points; ++i) {
        const double x = lo + (hi - lo) * (i + 0.5) / points;
        worst = std::max(worst, std::abs(v1(p, profile, x)));
    }
    return worst;
}

inline std::vector<Check> v1vanish() {
    std::vector<Check> out;
    for (const auto& pc : catalog_cases()) {
        out.push_back(below("(-1/4, -1/2) " + pc.profile.name(),
                            max_abs_v1(OrderingParams::li_kuhn_dual(), pc.profile, pc.lo, pc.hi), 1e-10));
    }
    struct Law {
        OrderingParams p;
        double xi;
    };
    const Law laws[] = {{OrderingParams::bdd(), -4.0 / 3.0},
                        {OrderingParams::bastard(), -4.0 / 5.0},
                        {OrderingParams::zk(), -4.0}};
    for (const auto& law : laws) {
        const VanishingLaw v = vanishing_mass_exponent(law.p);
        const std::string tag(to_string(law.p.tag()));
        out.push_back(below(tag + " exponent", std::abs(v.xi - law.xi), 1e-12));
        out.push_back(below(tag + " power law", max_abs_v1(law.p, MassProfile::power_law(v.xi), 0.5, 4.5), 1e-10));
    }
    // f = g at alpha = 0 gives beta = -5/8
    const OrderingParams fg(0.0, -0.625);
    const auto [f, g] = V1Coefficients::of(fg);
    Check line = below("f = g pair |f - g|", std::abs(f - g), kFEqualsGTolerance);
    line.pass = line.pass && vanishing_mass_exponent(fg).exponential();
    out.push_back(line);
    for (int sign : {1, -1}) {
        out.push_back(below("f = g exponential sign " + std::to_string(sign),
                            max_abs_v1(fg, MassProfile::exponential(0.7, sign), -3.0, 3.0), 1e-10));
    }
    return out;
}

inline std::vector<Check> intertwine() {
    std::vector<Check> out;
    const double q = 1.0;
    const MassProfile mass = MassProfile::sech_squared(q);
    const double alpha = -0.5;
    const Intertwiner eta(alpha, mass, 0.0);
    const auto [h, h1] = partner_problems(alpha, mass, 0.0, {-kInf, kInf});
    const Grid grid(-4.0, 4.0, 399);

    const auto conv = verify_intertwining(eta, h, h1, window_gaussian(-4.0, 4.0), grid);
    out.push_back(second_order("(eta H - H1 eta) f ratio", conv.ratio));

    const FreeParticleState g0(q, 0);
    const auto ann = annihilation_residual(eta, [&](double x) { return g0.psi(x); }, grid);
    out.push_back(second_order("eta psi0 ratio", ann.ratio));

    // eta psi_{n+1} proportional to phi_n
    for (int n = 0; n <= 3; ++n) {
        const FreeParticleState s(q, n + 1);
        auto misfit = [&](const Grid& g) {
            const auto ef = eta.apply(detail::sample([&](double x) { return s.psi(x); }, g), g);
            double num = 0.0, den = 0.0;
            for (int i = 1; i <= g.n(); ++i) {
                const double p = s.partner(g.node(i));
                num += ef[i] * p;
                den += p * p;
            }
            const double c = num / den;
            double worst = 0.0;
            for (int i = 1; i <= g.n(); ++i) worst = std::max(worst, std::abs(ef[i] - c * s.partner(g.node(i))));
            return worst;
        };
        const double coarse = misfit(grid), fine = misfit(grid.refined());
        const double ratio = coarse / fine;
        out.push_back(second_order("eta psi_" + std::to_string(n + 1) + " ~ phi_" + std::to_string(n), ratio));
    }

    std::mt19937_64 rng(7u);
    std::uniform_real_distribution<double> ux(-5.0, 5.0), ua(-1.5, 1.0), uv(-2.0, 2.0);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double a = ua(rng), v0 = uv(rng), x = ux(rng);
        const Intertwiner e(a, mass, v0);
        const auto pp = partner_potentials(a, mass, v0, x);
        worst = std::max(worst, std::abs(e.veff(x) - pp.first) / (1.0 + std::abs(pp.first)));
        worst = std::max(worst, std::abs(e.v1eff(x) - pp.second) / (1.0 + std::abs(pp.second)));
    }
    out.push_back(below("lambda0 + B^2 - (AB)' vs partner potentials", worst, 1e-10));
    return out;
}

/// Relative (or absolute near zero) distance to a target.
inline double level_error(double got, double want) {
    return want == 0.0 ? std::abs(got) : std::abs(got - want) / std::abs(want);
}

inline std::vector<Check> spectra(int n = 2000) {
    std::vector<Check> out;
    {
        const double alpha = -0.5;
        const MassProfile mass = MassProfile::sech_squared(1.0);
        const Intertwiner eta(alpha, mass, 0.0);
        const auto [h, h1] = partner_problems(alpha, mass, 0.0, {-kInf, kInf});
        const BoundarySpec bc{BoundaryCondition::robin(eta.zero_mode_log_derivative(-12.0)),
                              BoundaryCondition::robin(eta.zero_mode_log_derivative(12.0))};
        SolveOptions opt;
        opt.eigenvectors = false;
        const auto r = solve(h, Grid(-12.0, 12.0, n), bc, 5, opt);
        const double want[] = {0, 2, 6, 12, 20};
        for (int j = 0; j < 5; ++j)
            out.push_back(below("sech2 ZK E" + std::to_string(j), level_error(r.eigenvalues[j], want[j]), 1e-3));
        const auto r1 = solve(h1, Grid(-12.0, 12.0, n), BoundarySpec::dirichlet(), 4, opt);
        for (int j = 0; j < 4; ++j)
            out.push_back(
                below("sech2 BDD E" + std::to_string(j), level_error(r1.eigenvalues[j], want[j + 1]), 1e-3));
    }
    const auto model = PotentialModel::make<ScarfI>(3.0, 1.0);
    for (double q : {0.0, 0.5}) {
        const TransformSpec spec(model, q == 0.0 ? MassProfile::constant() : MassProfile::rational_su11(q));
        const SolverBox box = solver_box(spec, 4);
        SolveOptions opt;
        opt.eigenvectors = false;
        const auto r = solve(build_pdem(spec), Grid(box.xmin, box.xmax, n), box.bc, 4, opt);
        const double want[] = {0, 7, 16, 27};
        for (int j = 0; j < 4; ++j)
            out.push_back(below("Scarf I " + spec.profile().name() + " E" + std::to_string(j),
                                level_error(r.eigenvalues[j], want[j]), j == 0 ? 1e-2 : 1e-3));
    }
    return out;
}

inline const std::vector<std::string_view>& suite_names() {
    static const std::vector<std::string_view> names{"identity4", "duality", "v1vanish", "intertwine", "spectra"};
    return names;
}

inline std::vector<Check> run_suite(std::string_view name) {
    if (name == "identity4") return identity4();
    if (name == "duality") return duality();
    if (name == "v1vanish") return v1vanish();
    if (name == "intertwine") return intertwine();
    if (name == "spectra") return spectra();
    throw ParameterError("unknown suite \"" + std::string(name) +
                         "\" (identity4, duality, v1vanish, intertwine, spectra)");
}

}  // namespace pdem::verify
