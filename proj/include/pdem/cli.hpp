#pragma once

// Subcommand bodies behind tools/pdem.cpp. Each returns the process exit
// status: 0 success, 1 usage or validation error, 2 numeric/runtime failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pdem/boundary.hpp"
#include "pdem/error.hpp"
#include "pdem/grid.hpp"
#include "pdem/json_io.hpp"
#include "pdem/potentials.hpp"
#include "pdem/sl_solver.hpp"
#include "pdem/verify.hpp"
#include "pdem/xform.hpp"

namespace pdem::cli {

using json = nlohmann::json;

enum Exit : int { kOk = 0, kUsage = 1, kNumeric = 2 };

struct RunConfig {
    json mass;
    json ordering;  ///< required in direct mode and for zero_mode closures
    json potential;
    std::string mode = "transform";  ///< "transform" | "direct"
    double lambda = 1.0;
    double nu = 0.0;
    std::optional<double> xmin;
    std::optional<double> xmax;
    int n = 4000;
    json boundary = "auto";
    int k = 4;
    bool richardson = true;
    std::string format = "json";  ///< "json" | "csv"
};

inline RunConfig parse_run_config(const json& j) {
    if (!j.is_object()) throw ParameterError("config: top level must be an object");
    RunConfig c;
    auto get = [&](const char* key, auto& dst) {
        if (!j.contains(key)) return;
        try {
            dst = j.at(key).get<std::decay_t<decltype(dst)>>();
        } catch (const json::exception&) {
            throw ParameterError(std::string("config: bad type for \"") + key + "\"");
        }
    };
    c.mass = io::detail::require(j, "mass", "config");
    c.potential = io::detail::require(j, "potential", "config");
    if (j.contains("ordering")) c.ordering = j.at("ordering");
    get("mode", c.mode);
    get("lambda", c.lambda);
    get("nu", c.nu);
    get("k", c.k);
    get("richardson", c.richardson);
    get("format", c.format);
    if (j.contains("boundary")) c.boundary = j.at("boundary");
    if (j.contains("grid")) {
        const json& g = j.at("grid");
        if (!g.is_object()) throw ParameterError("config: \"grid\" must be an object");
        if (g.contains("xmin")) c.xmin = io::detail::number(g, "xmin", "grid");
        if (g.contains("xmax")) c.xmax = io::detail::number(g, "xmax", "grid");
        if (g.contains("n")) {
            if (!g.at("n").is_number_integer()) throw ParameterError("grid: \"n\" must be an integer");
            c.n = g.at("n").get<int>();
        }
    }
    return c;
}

/// Everything needed to call solve(), validated.
struct ResolvedRun {
    PDEMProblem problem;
    Grid grid;
    BoundarySpec bc;
    std::size_t k;
    SolveOptions options;
};

namespace detail {

inline BoundaryCondition parse_side(const json& j, double x_end, const std::optional<OrderingParams>& ordering,
                                    const MassProfile& mass, const std::optional<BoundaryCondition>& fallback) {
    std::string type;
    if (j.is_string()) {
        type = j.get<std::string>();
    } else if (j.is_object() && j.contains("type") && j.at("type").is_string()) {
        type = j.at("type").get<std::string>();
    } else {
        throw ParameterError("boundary: each side must be a string or an object with \"type\"");
    }
    if (type == "auto") {
        return fallback ? *fallback : BoundaryCondition::dirichlet();
    }
    if (type == "dirichlet") return BoundaryCondition::dirichlet();
    if (type == "robin") return BoundaryCondition::robin(io::detail::number(j, "c", "boundary"));
    if (type == "frobenius") {
        return BoundaryCondition::frobenius(io::detail::number(j, "exponent", "boundary"),
                                            io::detail::number(j, "origin", "boundary"));
    }
    if (type == "zero_mode") {
        if (!ordering) throw ParameterError("boundary: zero_mode needs an ordering");
        const MassValues mv = mass.eval(x_end);
        return BoundaryCondition::robin(-ordering->alpha() * mv.dm / mv.m);
    }
    throw ParameterError("boundary: unknown type \"" + type + "\"");
}

/// Default box for direct-mode problems on unbounded or half-bounded domains.
inline std::pair<double, double> direct_box(const MassProfile& mass, const Interval& dom) {
    if (const auto* s = std::get_if<MassProfile::SechSquared>(&mass.kind())) {
        const double edge = 12.0 / s->q;
        return {std::max(-edge, dom.lo), std::min(edge, dom.hi)};
    }
    if (dom.finite_lo() && dom.finite_hi()) {
        const double pad = 1e-6 * dom.width();
        return {dom.lo + pad, dom.hi - pad};
    }
    throw ParameterError("direct mode: grid.xmin and grid.xmax are required for this mass");
}

}  // namespace detail

inline ResolvedRun resolve(const RunConfig& c) {
    const MassProfile mass = io::parse_mass(c.mass);
    const PotentialModel model = io::parse_potential(c.potential);
    std::optional<OrderingParams> ordering;
    if (!c.ordering.is_null()) ordering = io::parse_ordering(c.ordering);
    if (c.k < 0) throw ParameterError("k must be >= 0");
    if (c.format != "json" && c.format != "csv") throw ParameterError("format must be json or csv");

    PDEMProblem problem;
    double xmin = 0.0, xmax = 0.0;
    std::optional<BoundarySpec> auto_bc;
    if (c.mode == "transform") {
        const TransformSpec spec(model, mass, c.lambda, c.nu);
        problem = build_pdem(spec);
        const SolverBox box = solver_box(spec, std::max(c.k, 1));
        xmin = box.xmin;
        xmax = box.xmax;
        auto_bc = box.bc;
    } else if (c.mode == "direct") {
        if (!ordering) throw ParameterError("direct mode needs an ordering");
        problem = build_pdem_direct([model](double x) { return model(x); }, mass, *ordering, model.domain(),
                                    model.describe() + " in x under " + mass.name());
        std::tie(xmin, xmax) = detail::direct_box(mass, problem.domain);
    } else {
        throw ParameterError("mode must be transform or direct");
    }
    if (c.xmin) xmin = *c.xmin;
    if (c.xmax) xmax = *c.xmax;
    if (!(xmin < xmax)) throw ParameterError("grid: xmin must be below xmax");
    const Grid grid(xmin, xmax, c.n);
    if (!grid.inside(problem.domain)) {
        throw ParameterError("grid: nodes leave the problem domain (" + std::to_string(problem.domain.lo) + ", " +
                             std::to_string(problem.domain.hi) + ")");
    }
    if (static_cast<std::size_t>(c.k) > static_cast<std::size_t>(grid.n())) {
        throw ParameterError("k exceeds the grid size");
    }

    const json& b = c.boundary;
    json left = b, right = b;
    if (b.is_object() && (b.contains("left") || b.contains("right"))) {
        left = b.value("left", json("auto"));
        right = b.value("right", json("auto"));
    }
    std::optional<BoundaryCondition> fl, fr;
    if (auto_bc) {
        fl = auto_bc->left;
        fr = auto_bc->right;
    }
    BoundarySpec bc{detail::parse_side(left, xmin, ordering, mass, fl),
                    detail::parse_side(right, xmax, ordering, mass, fr)};

    SolveOptions opt;
    opt.richardson = c.richardson;
    return {std::move(problem), grid, bc, static_cast<std::size_t>(c.k), opt};
}

/// Writes `text` to `path` through a sibling temporary and a rename.
inline void write_atomic(const std::string& path, const std::string& text) {
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        os << text;
        os.flush();
        if (!os) {
            os.close();
            std::filesystem::remove(tmp);
            throw std::runtime_error("write to " + tmp.string() + " failed");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw std::runtime_error("cannot rename onto " + path + ": " + ec.message());
    }
}

inline void print_table(const SpectrumResult& r, std::ostream& os) {
    char line[160];
    std::snprintf(line, sizeof line, "%3s  %22s  %8s  %10s  %10s  %s\n", "k", "E", "order", "err_est", "residual",
                  "resolved");
    os << line;
    for (std::size_t j = 0; j < r.size(); ++j) {
        const double res = j < r.residuals.size() ? r.residuals[j] : std::nan("");
        std::snprintf(line, sizeof line, "%3zu  %22.15g  %8.4f  %10.3e  %10.3e  %s\n", j, r.eigenvalues[j],
                      r.order[j], r.error_estimate[j], res, r.resolved[j] ? "yes" : "NO");
        os << line;
    }
}

inline std::string boundary_name(const BoundaryCondition& b) {
    switch (b.kind) {
        case BoundaryCondition::Kind::Dirichlet: return "dirichlet";
        case BoundaryCondition::Kind::Robin: return "robin(c=" + std::to_string(b.c) + ")";
        case BoundaryCondition::Kind::Frobenius:
            return "frobenius(s=" + std::to_string(b.exponent) + ", origin=" + std::to_string(b.origin) + ")";
    }
    return "?";
}

/// `config` is the parsed JSON; `out` empty means stdout (table goes to `err`).
inline int cmd_solve(const json& config, const std::string& out, std::ostream& os, std::ostream& err) {
    RunConfig cfg;
    std::optional<ResolvedRun> run;
    try {
        cfg = parse_run_config(config);
        run.emplace(resolve(cfg));
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    std::string text;
    try {
        const SpectrumResult r = solve(run->problem, run->grid, run->bc, run->k, run->options);
        if (cfg.format == "csv") {
            text = io::eigenvectors_csv(r);
        } else {
            json doc = io::to_json(r);
            doc["problem"] = run->problem.description;
            doc["boundary"] = {{"left", boundary_name(run->bc.left)}, {"right", boundary_name(run->bc.right)}};
            doc["config"] = config;
            text = doc.dump(2) + "\n";
        }
        print_table(r, out.empty() ? err : os);
        if (out.empty()) {
            os << text;
        } else {
            write_atomic(out, text);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kNumeric;
    }
    return kOk;
}

/// Long-format (q, x, V2) samples of the deformed Scarf I potential.
inline std::string figure1_csv(double a, double b, const std::vector<double>& qs, int samples, double margin) {
    if (samples < 2) throw ParameterError("figure1: samples must be >= 2");
    if (!(margin >= 0.0 && margin < 1.0)) throw ParameterError("figure1: margin must lie in [0, 1)");
    if (qs.empty()) throw ParameterError("figure1: empty q list");
    const auto model = PotentialModel::make<ScarfI>(a, b);
    std::string out = "q,x,V2\n";
    char line[96];
    for (double q : qs) {
        if (!(q >= 0.0) || !std::isfinite(q)) throw ParameterError("figure1: q must be finite and >= 0");
    }
    for (double q : qs) {
        const TransformSpec spec(model, q == 0.0 ? MassProfile::constant() : MassProfile::rational_su11(q));
        const double edge = q == 0.0 ? 0.5 * std::numbers::pi : spec.x_domain().hi;
        const double half = edge * (1.0 - margin);
        for (int i = 0; i < samples; ++i) {
            // symmetric in i; the middle sample of an odd count is exactly 0
            const double x = half * (2.0 * i - (samples - 1)) / (samples - 1);
            const double v = v2(spec, x);
            if (!std::isfinite(v)) throw NumericError("figure1: non-finite V2 at x = " + std::to_string(x));
            std::snprintf(line, sizeof line, "%.15g,%.17g,%.17g\n", q, x, v);
            out += line;
        }
    }
    return out;
}

inline int cmd_figure1(double a, double b, const std::vector<double>& qs, int samples, double margin,
                       const std::string& out, std::ostream& os, std::ostream& err) {
    std::string text;
    try {
        text = figure1_csv(a, b, qs, samples, margin);
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kNumeric;
    }
    try {
        if (out.empty()) {
            os << text;
        } else {
            write_atomic(out, text);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kNumeric;
    }
    return kOk;
}

inline int cmd_xq(const std::vector<double>& qs, std::ostream& os, std::ostream& err) {
    std::vector<std::pair<double, double>> rows;
    try {
        for (double q : qs) rows.emplace_back(q, solve_xq(q));
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kNumeric;
    }
    char line[64];
    for (const auto& [q, x] : rows) {
        std::snprintf(line, sizeof line, "%-10.6g %.12g\n", q, x);
        os << line;
    }
    return kOk;
}

inline int cmd_verify(const std::string& suite, std::ostream& os, std::ostream& err) {
    std::vector<verify::Check> checks;
    try {
        checks = verify::run_suite(suite);
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kNumeric;
    }
    char line[256];
    for (const auto& c : checks) {
        if (std::isnan(c.lower)) {
            std::snprintf(line, sizeof line, "%-4s  %-55s  %12.4e  (threshold %.3g)\n", c.pass ? "PASS" : "FAIL",
                          c.name.c_str(), c.value, c.threshold);
        } else {
            std::snprintf(line, sizeof line, "%-4s  %-55s  %12.4e  (range [%.3g, %.3g])\n", c.pass ? "PASS" : "FAIL",
                          c.name.c_str(), c.value, c.lower, c.threshold);
        }
        os << line;
    }
    const bool ok = verify::all_pass(checks);
    os << suite << ": " << (ok ? "all checks passed" : "FAILED") << '\n';
    return ok ? kOk : kNumeric;
}

}  // namespace pdem::cli
