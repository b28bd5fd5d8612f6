#pragma once

// Sturm-Liouville eigen-solver for -d/dx (1/M) d/dx + V_eff on a uniform grid.
//
// The operator is discretized as a symmetric tridiagonal matrix with 1/M
// sampled at cell midpoints. Eigenvalues come from Sturm-sequence bisection;
// bisection works on the LDL^T pivots row by row, so it keeps its accuracy on
// the strongly graded matrices produced by masses that decay by ten orders of
// magnitude across the box. Eigenvectors come from inverse iteration.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "pdem/boundary.hpp"
#include "pdem/error.hpp"
#include "pdem/grid.hpp"
#include "pdem/problem.hpp"

namespace pdem {

/// Symmetric tridiagonal matrix: diagonal d (size n), off-diagonal e (size n-1).
struct SLMatrix {
    std::vector<double> d;
    std::vector<double> e;

    [[nodiscard]] std::size_t size() const noexcept { return d.size(); }

    /// max_i (|d_i| + |e_{i-1}| + |e_i|)
    [[nodiscard]] double scale() const noexcept {
        double s = 0.0;
        for (std::size_t i = 0; i < d.size(); ++i) {
            double row = std::abs(d[i]);
            if (i > 0) row += std::abs(e[i - 1]);
            if (i + 1 < d.size()) row += std::abs(e[i]);
            s = std::max(s, row);
        }
        return s;
    }

    /// y = T x
    void multiply(std::span<const double> x, std::span<double> y) const noexcept {
        const std::size_t n = d.size();
        for (std::size_t i = 0; i < n; ++i) {
            double v = d[i] * x[i];
            if (i > 0) v += e[i - 1] * x[i - 1];
            if (i + 1 < n) v += e[i] * x[i + 1];
            y[i] = v;
        }
    }
};

[[nodiscard]] inline SLMatrix assemble(const PDEMProblem& problem, const Grid& grid, const BoundarySpec& bc) {
    const int n = grid.n();
    const double h = grid.h();
    const double inv_h2 = 1.0 / (h * h);
    if (!grid.inside(problem.domain)) {
        throw DomainError("assemble: grid [" + std::to_string(grid.xmin()) + ", " +
                          std::to_string(grid.xmax()) + "] leaves the problem domain");
    }
    // p = 1/M at midpoints x_{i+1/2}, i = 0..n
    std::vector<double> p(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double xm = grid.xmin() + (i + 0.5) * h;
        const MassValues mv = problem.profile.eval(xm);
        if (mv.below_floor) {
            throw NumericError("assemble: M(" + std::to_string(xm) + ") = " + std::to_string(mv.m) +
                               " is below the mass floor; shrink the domain");
        }
        p[i] = 1.0 / mv.m;
    }
    SLMatrix mat;
    mat.d.resize(n);
    mat.e.resize(n - 1);
    for (int i = 1; i <= n; ++i) {
        const double x = grid.node(i);
        const double v = problem.veff(x);
        if (!std::isfinite(v)) {
            throw DomainError("assemble: V_eff(" + std::to_string(x) + ") is not finite");
        }
        mat.d[i - 1] = (p[i - 1] + p[i]) * inv_h2 + v;
        if (i < n) mat.e[i - 1] = -p[i] * inv_h2;
    }
    mat.d.front() -= p.front() * inv_h2 * bc.left.ghost_ratio(grid.node(0), grid.node(1));
    mat.d.back() -= p.back() * inv_h2 * bc.right.ghost_ratio(grid.node(n + 1), grid.node(n));
    return mat;
}

/// Number of eigenvalues strictly below `shift` (negative LDL^T pivots of T - shift I).
[[nodiscard]] inline std::size_t sturm_count(const SLMatrix& mat, double shift) noexcept {
    const std::size_t n = mat.size();
    double emax2 = 1.0;
    for (double v : mat.e) emax2 = std::max(emax2, v * v);
    const double pivmin = std::numeric_limits<double>::min() * emax2;
    std::size_t count = 0;
    double q = mat.d[0] - shift;
    for (std::size_t i = 0;;) {
        if (std::abs(q) < pivmin) q = -pivmin;
        if (q < 0.0) ++count;
        if (++i == n) break;
        q = mat.d[i] - shift - mat.e[i - 1] * mat.e[i - 1] / q;
    }
    return count;
}

/// Gershgorin enclosure of the spectrum.
[[nodiscard]] inline std::pair<double, double> gershgorin_bounds(const SLMatrix& mat) noexcept {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    const std::size_t n = mat.size();
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(mat.e[i - 1]);
        if (i + 1 < n) r += std::abs(mat.e[i]);
        lo = std::min(lo, mat.d[i] - r);
        hi = std::max(hi, mat.d[i] + r);
    }
    const double pad = 2.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi));
    return {lo - pad - 1e-300, hi + pad + 1e-300};
}

/// The k lowest eigenvalues in ascending order. Each is isolated to a bracket
/// narrower than max(abs_tol, rel_tol * |eigenvalue|).
[[nodiscard]] inline std::vector<double> eigenvalues_bisect(const SLMatrix& mat, std::size_t k, double abs_tol,
                                                            double rel_tol = 0.0) {
    if (k > mat.size()) {
        throw ParameterError("eigenvalues_bisect: requested " + std::to_string(k) + " eigenvalues of an order-" +
                             std::to_string(mat.size()) + " matrix");
    }
    if (!(abs_tol > 0.0)) throw ParameterError("eigenvalues_bisect: tolerance must be positive");
    if (k == 0) return {};
    const auto [glo, ghi] = gershgorin_bounds(mat);
    std::vector<double> lo(k, glo), hi(k, ghi);
    for (std::size_t j = 0; j < k; ++j) {
        lo[j] = std::max(lo[j], j > 0 ? lo[j - 1] : glo);
        for (int it = 0; it < 2000; ++it) {
            const double width = hi[j] - lo[j];
            const double mag = std::max(std::abs(lo[j]), std::abs(hi[j]));
            if (width <= std::max(abs_tol, rel_tol * mag)) break;
            const double mid = lo[j] + 0.5 * width;
            if (mid <= lo[j] || mid >= hi[j]) break;
            const std::size_t c = sturm_count(mat, mid);
            // c eigenvalues lie below mid: tighten every pending bracket
            for (std::size_t jj = j; jj < k; ++jj) {
                if (c > jj) hi[jj] = std::min(hi[jj], mid);
                else lo[jj] = std::max(lo[jj], mid);
            }
        }
    }
    std::vector<double> out(k);
    for (std::size_t j = 0; j < k; ++j) out[j] = 0.5 * (lo[j] + hi[j]);
    return out;
}

namespace detail {

/// LU factorization with partial pivoting of a tridiagonal matrix T - shift I
/// (LAPACK dgttrf layout): L has unit diagonal and subdiagonal `l`, U has
/// diagonal `u0` and two superdiagonals `u1`, `u2`.
struct TridiagonalLU {
    std::vector<double> l, u0, u1, u2;
    std::vector<char> swapped;

    TridiagonalLU(const SLMatrix& mat, double shift) {
        const std::size_t n = mat.size();
        u0.resize(n);
        u1.assign(n, 0.0);
        u2.assign(n, 0.0);
        l.assign(n, 0.0);
        swapped.assign(n, 0);
        for (std::size_t i = 0; i < n; ++i) u0[i] = mat.d[i] - shift;
        for (std::size_t i = 0; i + 1 < n; ++i) u1[i] = mat.e[i];
        std::vector<double> sub(mat.e.begin(), mat.e.end());
        const double tiny = std::numeric_limits<double>::epsilon() * std::max(mat.scale(), 1e-300);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (std::abs(u0[i]) >= std::abs(sub[i])) {
                if (u0[i] == 0.0) u0[i] = tiny;
                const double f = sub[i] / u0[i];
                l[i] = f;
                u0[i + 1] -= f * u1[i];
            } else {
                // swap rows i and i+1
                const double f = u0[i] / sub[i];
                u0[i] = sub[i];
                l[i] = f;
                const double t = u1[i];
                u1[i] = u0[i + 1];
                u0[i + 1] = t - f * u0[i + 1];
                if (i + 2 < n) {
                    u2[i] = u1[i + 1];
                    u1[i + 1] = -f * u2[i];
                }
                swapped[i] = 1;
            }
        }
        if (u0[n - 1] == 0.0) u0[n - 1] = tiny;
    }

    void solve(std::vector<double>& b) const {
        const std::size_t n = u0.size();
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (swapped[i]) std::swap(b[i], b[i + 1]);
            b[i + 1] -= l[i] * b[i];
        }
        for (std::size_t ii = n; ii-- > 0;) {
            double v = b[ii];
            if (ii + 1 < n) v -= u1[ii] * b[ii + 1];
            if (ii + 2 < n) v -= u2[ii] * b[ii + 2];
            b[ii] = v / u0[ii];
        }
    }
};

inline double norm2(std::span<const double> v) noexcept {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace detail

/// Flips the sign of v so that its rightmost lobe (last entry with
/// |v_i| >= 1e-3 max|v|) is positive.
inline void apply_sign_convention(std::span<double> v) noexcept {
    double vmax = 0.0;
    for (double x : v) vmax = std::max(vmax, std::abs(x));
    for (std::size_t i = v.size(); i-- > 0;) {
        if (std::abs(v[i]) >= 1e-3 * vmax) {
            if (v[i] < 0.0) {
                for (double& x : v) x = -x;
            }
            return;
        }
    }
}

struct EigenPair {
    std::vector<double> vector;  ///< unit Euclidean norm, sign convention applied
    double rayleigh;             ///< x^T T x for the returned vector
    double residual;             ///< ||T x - rayleigh x||_2 / (scale(T) ||x||_2)
    int iterations;
};

/// Inverse iteration at `shift`. Converges to the eigenpair nearest the shift.
[[nodiscard]] inline EigenPair eigenvector_inverse_iteration(const SLMatrix& mat, double shift,
                                                             double tol = 1e-8, int max_iter = 50) {
    const std::size_t n = mat.size();
    if (n == 0) throw ParameterError("inverse iteration on an empty matrix");
    const detail::TridiagonalLU lu(mat, shift);
    const double scale = std::max(mat.scale(), std::numeric_limits<double>::min());
    // deterministic start vector with components along every mode
    std::vector<double> x(n), tx(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 + 0.5 * std::sin(0.7 * static_cast<double>(i) + 0.3);
    double rq = shift;
    double res = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= max_iter; ++it) {
        lu.solve(x);
        const double nrm = detail::norm2(x);
        if (!(nrm > 0.0) || !std::isfinite(nrm)) {
            throw NumericError("inverse iteration: breakdown at shift " + std::to_string(shift));
        }
        for (double& v : x) v /= nrm;
        mat.multiply(x, tx);
        rq = 0.0;
        for (std::size_t i = 0; i < n; ++i) rq += x[i] * tx[i];
        double r2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = tx[i] - rq * x[i];
            r2 += r * r;
        }
        res = std::sqrt(r2) / scale;
        if (res < tol && it >= 2) {
            apply_sign_convention(x);
            return {std::move(x), rq, res, it};
        }
    }
    throw NumericError("inverse iteration: no convergence in " + std::to_string(max_iter) +
                       " iterations at shift " + std::to_string(shift) + " (residual " + std::to_string(res) +
                       ")");
}

struct SolveOptions {
    /// Solve on h, h/2 and h/4; extrapolate from (h, h/2), estimate the order
    /// from all three.
    bool richardson = true;
    bool eigenvectors = true;
    /// Bisection bracket width: max(abs, rel * |E|).
    double abs_tol = 1e-8;
    double rel_tol = 1e-8;
    /// A level is flagged unresolved when its estimated discretization error
    /// exceeds this fraction of max(1, |E|).
    double resolution_tol = 1e-3;
};

struct SpectrumResult {
    Grid grid{0.0, 1.0, Grid::kMinNodes};
    /// Reported eigenvalues: Richardson-extrapolated when available.
    std::vector<double> eigenvalues;
    /// Raw eigenvalues per grid level (h, h/2, h/4).
    std::vector<std::vector<double>> level_eigenvalues;
    /// Observed convergence order per eigenvalue (NaN when not measurable).
    std::vector<double> order;
    std::vector<double> error_estimate;
    std::vector<bool> resolved;
    /// Unit-L2 eigenvectors (h * sum psi_i^2 = 1) on the interior nodes of `grid`.
    std::vector<std::vector<double>> eigenvectors;
    std::vector<double> residuals;
    std::vector<int> iterations;

    [[nodiscard]] std::size_t size() const noexcept { return eigenvalues.size(); }
};

[[nodiscard]] inline SpectrumResult solve(const PDEMProblem& problem, const Grid& grid, const BoundarySpec& bc,
                                          std::size_t k, const SolveOptions& opt = {}) {
    SpectrumResult out;
    out.grid = grid;
    if (k == 0) return out;
    if (k > static_cast<std::size_t>(grid.n())) {
        throw ParameterError("solve: k = " + std::to_string(k) + " exceeds grid size " + std::to_string(grid.n()));
    }
    const SLMatrix base = assemble(problem, grid, bc);
    out.level_eigenvalues.push_back(eigenvalues_bisect(base, k, opt.abs_tol, opt.rel_tol));
    if (opt.richardson) {
        Grid g = grid;
        for (int level = 1; level <= 2; ++level) {
            g = g.refined();
            out.level_eigenvalues.push_back(
                eigenvalues_bisect(assemble(problem, g, bc), k, opt.abs_tol, opt.rel_tol));
        }
    }
    const auto& e0 = out.level_eigenvalues.front();
    out.eigenvalues = e0;
    out.order.assign(k, std::numeric_limits<double>::quiet_NaN());
    out.error_estimate.assign(k, std::numeric_limits<double>::quiet_NaN());
    out.resolved.assign(k, true);
    if (opt.richardson) {
        const auto& e1 = out.level_eigenvalues[1];
        const auto& e2 = out.level_eigenvalues[2];
        for (std::size_t j = 0; j < k; ++j) {
            const double ext = (4.0 * e1[j] - e0[j]) / 3.0;
            out.eigenvalues[j] = ext;
            const double d01 = e0[j] - e1[j];
            const double d12 = e1[j] - e2[j];
            if (d12 != 0.0 && d01 / d12 > 0.0) out.order[j] = std::log2(d01 / d12);
            out.error_estimate[j] = std::abs(ext - e1[j]);
            out.resolved[j] = out.error_estimate[j] <= opt.resolution_tol * std::max(1.0, std::abs(ext));
        }
    }
    if (opt.eigenvectors) {
        const double h = grid.h();
        for (std::size_t j = 0; j < k; ++j) {
            EigenPair ep = eigenvector_inverse_iteration(base, e0[j]);
            const double s = 1.0 / std::sqrt(h);
            for (double& v : ep.vector) v *= s;
            out.residuals.push_back(ep.residual);
            out.iterations.push_back(ep.iterations);
            out.eigenvectors.push_back(std::move(ep.vector));
        }
    }
    return out;
}

}  // namespace pdem
