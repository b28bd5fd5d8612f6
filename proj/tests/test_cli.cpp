#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "pdem/cli.hpp"

using namespace pdem;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Csv {
    std::vector<double> q, x, v;
};

Csv parse_csv(const std::string& text) {
    Csv c;
    std::istringstream is(text);
    std::string line;
    std::getline(is, line);
    while (std::getline(is, line)) {
        double a, b, d;
        char s1, s2;
        std::istringstream ls(line);
        ls >> a >> s1 >> b >> s2 >> d;
        c.q.push_back(a);
        c.x.push_back(b);
        c.v.push_back(d);
    }
    return c;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

json load_config(const std::string& name) { return json::parse(slurp(fs::path(PDEM_CONFIG_DIR) / name)); }

class Scratch : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("pdem_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    /// Runs the binary with stdout/stderr captured to files; returns the exit status.
    int run(const std::string& args) {
        const std::string cmd = std::string("\"") + PDEM_CLI_PATH + "\" " + args + " > \"" +
                                (dir_ / "stdout").string() + "\" 2> \"" + (dir_ / "stderr").string() + "\"";
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }
    std::string out() const { return slurp(dir_ / "stdout"); }
    std::string err() const { return slurp(dir_ / "stderr"); }
    fs::path path(const std::string& name) const { return dir_ / name; }

    fs::path dir_;
};

}  // namespace

TEST(RunConfig, Defaults) {
    const auto c = cli::parse_run_config(json{{"mass", {{"kind", "constant"}}}, {"potential", {{"kind", "scarf1"}}}});
    EXPECT_EQ(c.mode, "transform");
    EXPECT_EQ(c.lambda, 1.0);
    EXPECT_EQ(c.nu, 0.0);
    EXPECT_EQ(c.n, 4000);
    EXPECT_EQ(c.k, 4);
    EXPECT_TRUE(c.richardson);
    EXPECT_EQ(c.format, "json");
    EXPECT_EQ(c.boundary, "auto");
    EXPECT_FALSE(c.xmin.has_value());
}

TEST(RunConfig, ValidationErrors) {
    EXPECT_THROW((void)cli::parse_run_config(json::array()), ParameterError);
    EXPECT_THROW((void)cli::parse_run_config(json{{"potential", {{"kind", "free"}}}}), ParameterError);
    json bad = load_config("scarf_rational.json");
    bad["k"] = "four";
    EXPECT_THROW((void)cli::parse_run_config(bad), ParameterError);
    bad = load_config("scarf_rational.json");
    bad["grid"]["n"] = 10.5;
    EXPECT_THROW((void)cli::parse_run_config(bad), ParameterError);
}

TEST(RunConfig, ResolveRejectsInconsistentRuns) {
    auto resolve_json = [](const json& j) { return cli::resolve(cli::parse_run_config(j)); };
    json direct = load_config("free_sech2_zk.json");
    direct.erase("ordering");
    EXPECT_THROW((void)resolve_json(direct), ParameterError);

    json many = load_config("scarf_rational.json");
    many["grid"]["n"] = 20;
    many["k"] = 21;
    EXPECT_THROW((void)resolve_json(many), ParameterError);

    json outside = load_config("scarf_rational.json");
    outside["grid"]["xmin"] = -5.0;
    outside["grid"]["xmax"] = 0.5;
    EXPECT_ANY_THROW((void)resolve_json(outside));

    json unknown = load_config("scarf_rational.json");
    unknown["potential"]["kind"] = "morse";
    EXPECT_THROW((void)resolve_json(unknown), ParameterError);

    json side = load_config("scarf_rational.json");
    side["boundary"] = {{"left", "dirichlet"}, {"right", {{"type", "bogus"}}}};
    EXPECT_THROW((void)resolve_json(side), ParameterError);
}

TEST(RunConfig, ZeroModeClosureUsesOrdering) {
    const auto run = cli::resolve(cli::parse_run_config(load_config("free_sech2_zk.json")));
    ASSERT_EQ(run.bc.left.kind, BoundaryCondition::Kind::Robin);
    // ZK: psi0 = sech x, psi'/psi = -tanh x
    EXPECT_NEAR(run.bc.left.c, std::tanh(12.0), 1e-12);
    EXPECT_NEAR(run.bc.right.c, -std::tanh(12.0), 1e-12);
    EXPECT_EQ(run.k, 5u);
}

TEST(CmdSolve, FreeParticleExample) {
    json cfg = load_config("free_sech2_zk.json");
    std::ostringstream os, err;
    ASSERT_EQ(cli::cmd_solve(cfg, "", os, err), cli::kOk) << err.str();
    const json doc = json::parse(os.str());
    const double want[] = {0, 2, 6, 12, 20};
    ASSERT_EQ(doc["eigenvalues"].size(), 5u);
    for (int j = 0; j < 5; ++j) {
        EXPECT_NEAR(doc["eigenvalues"][j].get<double>(), want[j], 1e-3 * std::max(1.0, want[j]));
    }
    EXPECT_EQ(doc["boundary"]["left"].get<std::string>().rfind("robin", 0), 0u);
    EXPECT_EQ(doc["config"], cfg);
    EXPECT_NE(err.str().find("resolved"), std::string::npos);
}

TEST(CmdSolve, ScarfRationalExample) {
    std::ostringstream os, err;
    ASSERT_EQ(cli::cmd_solve(load_config("scarf_rational.json"), "", os, err), cli::kOk) << err.str();
    const json doc = json::parse(os.str());
    const double want[] = {0, 7, 16, 27};
    for (int j = 0; j < 4; ++j) {
        EXPECT_NEAR(doc["eigenvalues"][j].get<double>(), want[j], 1e-3 * std::max(1.0, want[j]));
    }
}

TEST(CmdSolve, CsvFormat) {
    json cfg = load_config("scarf_rational.json");
    cfg["format"] = "csv";
    cfg["grid"]["n"] = 100;
    cfg["k"] = 2;
    std::ostringstream os, err;
    ASSERT_EQ(cli::cmd_solve(cfg, "", os, err), cli::kOk) << err.str();
    const std::string text = os.str();
    EXPECT_EQ(text.substr(0, text.find('\n')), "x,psi0,psi1");
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 101);
}

TEST(CmdSolve, ExitCodes) {
    std::ostringstream os, err;
    EXPECT_EQ(cli::cmd_solve(json{{"mass", {{"kind", "nope"}}}, {"potential", {{"kind", "free"}}}}, "", os, err),
              cli::kUsage);
    // the mass drops below the floor long before |x| = 40
    json deep = load_config("free_sech2_zk.json");
    deep["grid"] = {{"xmin", -40}, {"xmax", 40}, {"n", 200}};
    EXPECT_EQ(cli::cmd_solve(deep, "", os, err), cli::kNumeric);
    EXPECT_NE(err.str().find("mass floor"), std::string::npos);
}

TEST(Figure1, DefaultsShareTheOriginCrossing) {
    const auto csv = parse_csv(cli::figure1_csv(3, 1, {0, 0.1, 0.5, 1}, 401, 1e-3));
    ASSERT_EQ(csv.q.size(), 4u * 401u);
    int crossings = 0;
    for (std::size_t i = 0; i < csv.q.size(); ++i) {
        EXPECT_TRUE(std::isfinite(csv.v[i]));
        if (csv.x[i] == 0.0) {
            EXPECT_NEAR(csv.v[i], -2.0, 1e-12);
            ++crossings;
        }
    }
    EXPECT_EQ(crossings, 4);
}

TEST(Figure1, SupportsRespectDomainEdges) {
    const auto csv = parse_csv(cli::figure1_csv(3, 1, {0, 1}, 101, 1e-3));
    double max_q1 = 0.0, max_q0 = 0.0;
    for (std::size_t i = 0; i < csv.q.size(); ++i) {
        (csv.q[i] == 1.0 ? max_q1 : max_q0) = std::max(csv.q[i] == 1.0 ? max_q1 : max_q0, std::abs(csv.x[i]));
    }
    EXPECT_LT(max_q1, 0.860334);
    EXPECT_NEAR(max_q1, 0.860334 * (1 - 1e-3), 1e-6);
    EXPECT_NEAR(max_q0, 0.5 * std::numbers::pi * (1 - 1e-3), 1e-12);
}

TEST(Figure1, TwoSamplesAndDeterminism) {
    const std::string a = cli::figure1_csv(3, 1, {0, 0.5}, 2, 1e-3);
    const auto csv = parse_csv(a);
    ASSERT_EQ(csv.q.size(), 4u);
    EXPECT_EQ(csv.q[0], 0.0);
    EXPECT_EQ(csv.q[1], 0.0);
    EXPECT_EQ(csv.x[0], -csv.x[1]);
    EXPECT_EQ(a, cli::figure1_csv(3, 1, {0, 0.5}, 2, 1e-3));
    EXPECT_EQ(a.substr(0, 7), "q,x,V2\n");
}

TEST(Figure1, InvalidParametersExitOne) {
    std::ostringstream os, err;
    EXPECT_EQ(cli::cmd_figure1(3, 1, {0.5}, 1, 1e-3, "", os, err), cli::kUsage);
    EXPECT_EQ(cli::cmd_figure1(3, 1, {-0.1}, 10, 1e-3, "", os, err), cli::kUsage);
    EXPECT_EQ(cli::cmd_figure1(3, 1, {0.5}, 10, 1.0, "", os, err), cli::kUsage);
    EXPECT_EQ(cli::cmd_figure1(3, 2, {0.5}, 10, 1e-3, "", os, err), cli::kUsage);
    EXPECT_TRUE(os.str().empty());
}

TEST(CmdXq, PrintsRoots) {
    std::ostringstream os, err;
    ASSERT_EQ(cli::cmd_xq({0.1, 0.5, 1.0}, os, err), cli::kOk);
    std::istringstream is(os.str());
    const double want[] = {1.47335, 1.14446, 0.860334};
    for (double w : want) {
        double q, x;
        is >> q >> x;
        EXPECT_NEAR(x, w, 1e-5);
    }
    std::ostringstream o2, e2;
    EXPECT_EQ(cli::cmd_xq({0.0}, o2, e2), cli::kUsage);
}

TEST(CmdVerify, SuitesAndUnknownName) {
    for (const char* s : {"v1vanish", "duality"}) {
        std::ostringstream os, err;
        EXPECT_EQ(cli::cmd_verify(s, os, err), cli::kOk) << os.str();
        EXPECT_NE(os.str().find("all checks passed"), std::string::npos);
        EXPECT_EQ(os.str().find("FAIL "), std::string::npos);
    }
    std::ostringstream os, err;
    EXPECT_EQ(cli::cmd_verify("everything", os, err), cli::kUsage);
    EXPECT_NE(err.str().find("unknown suite"), std::string::npos);
}

TEST(WriteAtomic, ReplacesWithoutLeftovers) {
    const fs::path p = fs::temp_directory_path() / "pdem_atomic_test.txt";
    cli::write_atomic(p.string(), "one\n");
    cli::write_atomic(p.string(), "two\n");
    EXPECT_EQ(slurp(p), "two\n");
    EXPECT_FALSE(fs::exists(p.string() + ".tmp"));
    fs::remove(p);
    EXPECT_ANY_THROW(cli::write_atomic("/nonexistent-dir/x.txt", "x"));
}

using Binary = Scratch;

TEST_F(Binary, MalformedJsonExitsOneWithoutOutput) {
    std::ofstream(path("bad.json")) << "{\"mass\": {\"kind\": ";
    EXPECT_EQ(run("solve --config \"" + path("bad.json").string() + "\" --out \"" + path("r.json").string() + "\""),
              1);
    EXPECT_FALSE(fs::exists(path("r.json")));
    EXPECT_FALSE(fs::exists(path("r.json").string() + ".tmp"));
    EXPECT_FALSE(err().empty());
}

TEST_F(Binary, SolveWritesResultFile) {
    const std::string cfg = std::string(PDEM_CONFIG_DIR) + "/scarf_rational.json";
    ASSERT_EQ(run("solve --config \"" + cfg + "\" --n 1000 --out \"" + path("r.json").string() + "\""), 0) << err();
    const json doc = json::parse(slurp(path("r.json")));
    EXPECT_NEAR(doc["eigenvalues"][1].get<double>(), 7.0, 1e-2);
    EXPECT_EQ(doc["grid"]["n"].get<int>(), 1000);
    EXPECT_FALSE(fs::exists(path("r.json").string() + ".tmp"));
    EXPECT_NE(out().find("resolved"), std::string::npos);
}

TEST_F(Binary, InlineFlags) {
    ASSERT_EQ(run("solve --mass '{\"kind\":\"sech2\",\"q\":1}' --potential '{\"kind\":\"free\"}' "
                  "--ordering ZK --mode direct --boundary zero_mode --n 1000 --k 3"),
              0)
        << err();
    const json doc = json::parse(out());
    EXPECT_NEAR(doc["eigenvalues"][2].get<double>(), 6.0, 1e-2);
}

TEST_F(Binary, UsageErrors) {
    EXPECT_EQ(run("verify nonsense"), 1);
    EXPECT_EQ(run("frobnicate"), 1);
    EXPECT_EQ(run("solve --config /does/not/exist.json"), 1);
    EXPECT_EQ(run("figure1 --samples 1"), 1);
    EXPECT_EQ(run("xq"), 1);
}

TEST_F(Binary, Figure1IsByteIdentical) {
    ASSERT_EQ(run("figure1 --out \"" + path("a.csv").string() + "\""), 0);
    ASSERT_EQ(run("figure1 --out \"" + path("b.csv").string() + "\""), 0);
    const std::string a = slurp(path("a.csv"));
    EXPECT_EQ(a, slurp(path("b.csv")));
    EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 1 + 4 * 401);
    ASSERT_EQ(run("figure1 --samples 2 --q 1"), 0);
    const std::string two = out();
    EXPECT_EQ(std::count(two.begin(), two.end(), '\n'), 3);
}

TEST_F(Binary, XqAndVerify) {
    ASSERT_EQ(run("xq --q 1"), 0);
    EXPECT_NE(out().find("0.860333589"), std::string::npos);
    ASSERT_EQ(run("verify v1vanish"), 0);
    EXPECT_NE(out().find("v1vanish: all checks passed"), std::string::npos);
}
