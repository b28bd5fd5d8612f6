// pdem: solve position-dependent-mass bound-state problems from JSON specs.
//
//   pdem solve --config run.json [--out result.json] [--format json|csv]
//   pdem solve --mass '{"kind":"sech2","q":1}' --potential '{"kind":"free"}' \
//              --ordering '{"preset":"ZK"}' --mode direct --boundary zero_mode --k 5
//   pdem figure1 [--A 3] [--B 1] [--q 0,0.1,0.5,1] [--samples 401] [--margin 1e-3]
//   pdem xq --q 0.1,0.5,1
//   pdem verify identity4|duality|v1vanish|intertwine|spectra

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pdem/cli.hpp"

namespace {

using nlohmann::json;

/// Inline flags for `solve`; each overrides the matching config key.
struct SolveFlags {
    std::string config_path;
    std::string out;
    std::optional<std::string> format;
    std::optional<std::string> mass, ordering, potential, boundary, mode;
    std::optional<double> lambda, nu, xmin, xmax;
    std::optional<int> n, k;
    bool no_richardson = false;
};

json parse_fragment(const std::string& flag, const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error&) {
        // bare words: --ordering ZK, --boundary dirichlet
        if (flag == "ordering") return json{{"preset", text}};
        if (flag == "boundary") return json(text);
        throw pdem::ParameterError("--" + flag + ": not valid JSON");
    }
}

int run_solve(const SolveFlags& f) {
    json cfg = json::object();
    try {
        if (!f.config_path.empty()) {
            std::ifstream is(f.config_path);
            if (!is) throw pdem::ParameterError("cannot read " + f.config_path);
            cfg = json::parse(is);
        }
        if (f.mass) cfg["mass"] = parse_fragment("mass", *f.mass);
        if (f.ordering) cfg["ordering"] = parse_fragment("ordering", *f.ordering);
        if (f.potential) cfg["potential"] = parse_fragment("potential", *f.potential);
        if (f.boundary) cfg["boundary"] = parse_fragment("boundary", *f.boundary);
        if (f.mode) cfg["mode"] = *f.mode;
        if (f.format) cfg["format"] = *f.format;
        if (f.lambda) cfg["lambda"] = *f.lambda;
        if (f.nu) cfg["nu"] = *f.nu;
        if (f.k) cfg["k"] = *f.k;
        if (f.no_richardson) cfg["richardson"] = false;
        if (f.xmin || f.xmax || f.n) {
            if (!cfg.contains("grid") || !cfg["grid"].is_object()) cfg["grid"] = json::object();
            if (f.xmin) cfg["grid"]["xmin"] = *f.xmin;
            if (f.xmax) cfg["grid"]["xmax"] = *f.xmax;
            if (f.n) cfg["grid"]["n"] = *f.n;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return pdem::cli::kUsage;
    }
    return pdem::cli::cmd_solve(cfg, f.out, std::cout, std::cerr);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Position-dependent effective mass spectra"};
    app.require_subcommand(1);

    SolveFlags sf;
    auto* solve = app.add_subcommand("solve", "Solve for the lowest k levels");
    solve->add_option("--config", sf.config_path, "JSON run configuration")->check(CLI::ExistingFile);
    solve->add_option("--out", sf.out, "Output path (default: stdout)");
    solve->add_option("--format", sf.format, "json or csv (eigenvectors)")
        ->check(CLI::IsMember({"json", "csv"}));
    solve->add_option("--mass", sf.mass, "Mass profile JSON");
    solve->add_option("--ordering", sf.ordering, "Ordering JSON or preset name");
    solve->add_option("--potential", sf.potential, "Reference potential JSON");
    solve->add_option("--boundary", sf.boundary, "auto, dirichlet, zero_mode or boundary JSON");
    solve->add_option("--mode", sf.mode, "transform or direct")->check(CLI::IsMember({"transform", "direct"}));
    solve->add_option("--lambda", sf.lambda, "Scale of y = lambda z(x) + nu (E = lambda^2 eps)");
    solve->add_option("--nu", sf.nu, "Shift of y = lambda z(x) + nu");
    solve->add_option("--xmin", sf.xmin, "Left grid end (overrides the default box)");
    solve->add_option("--xmax", sf.xmax, "Right grid end (overrides the default box)");
    solve->add_option("--n", sf.n, "Interior grid points");
    solve->add_option("--k", sf.k, "Number of levels");
    solve->add_flag("--no-richardson", sf.no_richardson, "Single grid, no extrapolation");

    double fa = 3.0, fb = 1.0, margin = 1e-3;
    std::vector<double> fq{0.0, 0.1, 0.5, 1.0};
    int samples = 401;
    std::string fout;
    auto* fig = app.add_subcommand("figure1", "Deformed Scarf I potentials as long-format CSV");
    fig->add_option("--A", fa, "Scarf I A");
    fig->add_option("--B", fb, "Scarf I B (0 < B < A - 1)");
    fig->add_option("--q", fq, "Comma-separated mass parameters")->delimiter(',');
    fig->add_option("--samples", samples, "Points per curve (>= 2)");
    fig->add_option("--margin", margin, "Fractional pullback from the domain edges");
    fig->add_option("--out", fout, "Output path (default: stdout)");

    std::vector<double> xq_q;
    auto* xq = app.add_subcommand("xq", "Endpoint x_q of the deformed Scarf I domain");
    xq->add_option("--q", xq_q, "Comma-separated q > 0")->required()->delimiter(',');

    std::string suite;
    auto* ver = app.add_subcommand("verify", "Run an invariant suite");
    ver->add_option("suite", suite, "identity4, duality, v1vanish, intertwine, spectra")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : pdem::cli::kUsage;
    }

    if (*solve) return run_solve(sf);
    if (*fig) return pdem::cli::cmd_figure1(fa, fb, fq, samples, margin, fout, std::cout, std::cerr);
    if (*xq) return pdem::cli::cmd_xq(xq_q, std::cout, std::cerr);
    if (*ver) return pdem::cli::cmd_verify(suite, std::cout, std::cerr);
    return pdem::cli::kUsage;
}
