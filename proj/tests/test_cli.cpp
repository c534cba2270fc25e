#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "json.hpp"
#include "mrakit/fixtures.hpp"
#include "mrakit/io.hpp"

namespace mrakit {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CliResult {
  int status = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("mrakit_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path path(const std::string& name) const { return dir_ / name; }

  static std::string filter(const std::string& name) { return std::string(MRAKIT_DATA_DIR) + "/filters/" + name + ".json"; }

  CliResult run(const std::string& args) const {
    const fs::path out = dir_ / "stdout.txt";
    const fs::path err = dir_ / "stderr.txt";
    const std::string cmd = std::string(MRAKIT_CLI_PATH) + " " + args + " >" + out.string() + " 2>" + err.string();
    const int raw = std::system(cmd.c_str());
    CliResult r;
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }

  void write(const std::string& name, const SampledFunction& f) const {
    std::ofstream os(path(name));
    io::write_function_csv(os, f);
  }

  SampledFunction read_function(const std::string& name) const {
    std::ifstream is(path(name));
    return io::read_function_csv(is);
  }

  fs::path dir_;
};

double value_of(const json& decimal) { return std::stod(decimal.get<std::string>()); }

TEST_F(Cli, AnalyzeHaarPasses) {
  const CliResult r = run("analyze-filter --filter " + filter("haar"));
  ASSERT_EQ(r.status, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_TRUE(j.at("pass").get<bool>());
  const json& res = j.at("residuals");
  for (const char* key : {"admissibility", "filter_quadrature_time", "filter_quadrature_freq", "cqf_cross_quadrature", "cqf"}) {
    EXPECT_LT(value_of(res.at(key)), 1e-10) << key;
  }
  for (const auto& [key, v] : res.at("pou_filter").items()) EXPECT_LT(value_of(v), 1e-10) << key;
  EXPECT_EQ(j.at("cqf").at("shift").get<int>(), 1);
  EXPECT_EQ(j.at("cqf").at("sign").get<int>(), 1);
}

TEST_F(Cli, AnalyzeDegenerateNamesPouFilter) {
  const CliResult r = run("analyze-filter --filter " + filter("degenerate"));
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("FAIL pou_filter residual="), std::string::npos) << r.err;
  const json j = json::parse(r.out);
  EXPECT_FALSE(j.at("pass").get<bool>());
  EXPECT_LE(value_of(j.at("residuals").at("admissibility")), 1e-14);
}

TEST_F(Cli, ToleranceFlagsOverrideThresholds) {
  const CliResult strict = run("analyze-filter --filter " + filter("haar") + " --tol-admissibility -1");
  EXPECT_EQ(strict.status, 1);
  EXPECT_NE(strict.err.find("FAIL admissibility"), std::string::npos);
  const CliResult lenient = run("analyze-filter --filter " + filter("degenerate") +
                          " --tol-pou-filter 10 --tol-filter-quadrature 10 --tol-cqf 10");
  EXPECT_EQ(lenient.status, 0) << lenient.err;
}

TEST_F(Cli, UsageAndInputErrorsExitTwo) {
  std::ofstream(path("bad.json")) << "{\"name\": \"x\", \"offset\": 0, \"coeffs\": [[1, 0]";
  EXPECT_EQ(run("analyze-filter --filter " + path("bad.json").string()).status, 2);
  std::ofstream(path("nan.json")) << "{\"name\": \"x\", \"offset\": 0, \"coeffs\": [[NaN, 0]]}";
  EXPECT_EQ(run("analyze-filter --filter " + path("nan.json").string()).status, 2);
  EXPECT_EQ(run("analyze-filter --filter " + path("missing.json").string()).status, 2);
  EXPECT_EQ(run("analyze-filter --filter " + filter("haar") + " --no-such-flag").status, 2);
  EXPECT_EQ(run("analyze-filter").status, 2);
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("frobnicate").status, 2);
  EXPECT_EQ(run("build-scaling --filter " + filter("haar") + " --method magic --out x.csv").status, 2);
  EXPECT_EQ(run("analyze-filter --filter " + filter("haar") + " --freq-points 7").status, 2);
  EXPECT_EQ(run("--help").status, 0);
}

TEST_F(Cli, BuildScalingHaarCascade) {
  const CliResult r = run("build-scaling --filter " + filter("haar") + " --method cascade --out " + path("phi.csv").string());
  ASSERT_EQ(r.status, 0) << r.err;
  const SampledFunction phi = read_function("phi.csv");
  EXPECT_EQ(phi.grid().support_lo(), 0.0);
  EXPECT_EQ(phi.grid().support_hi(), 1.0);
  for (const Complex& v : phi.values()) EXPECT_NEAR(std::abs(v - 1.0), 0.0, 1e-14);
  const json side = json::parse(slurp(path("phi.csv.report.json")));
  EXPECT_TRUE(side.at("report").at("converged").get<bool>());
  EXPECT_TRUE(side.at("pass").get<bool>());
}

TEST_F(Cli, BuildScalingHatProductMatchesClosedForm) {
  const CliResult r = run("build-scaling --filter " + filter("hat") + " --method product --iterations 24 --freq-points 256 --out " +
                    path("phit.csv").string());
  ASSERT_EQ(r.status, 0) << r.err;
  std::ifstream is(path("phit.csv"));
  const FourierSamples F = io::read_fourier_csv(is);
  ASSERT_EQ(F.omegas.size(), 256u);
  for (std::size_t m = 0; m < F.omegas.size(); ++m) {
    const double w = F.omegas[m];
    Complex exact = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    if (w != 0.0) exact *= std::polar(1.0, -w) * std::pow(std::sin(w / 2) / (w / 2), 2);
    EXPECT_LE(std::abs(F.values[m] - exact), 1e-6) << "w = " << w;
  }
  EXPECT_EQ(json::parse(slurp(path("phit.csv.report.json"))).at("terms").get<int>(), 24);
}

TEST_F(Cli, BuildScalingDegenerateReportsNonConvergence) {
  const CliResult r = run("build-scaling --filter " + filter("degenerate") + " --out " + path("phi.csv").string());
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("FAIL cascade"), std::string::npos) << r.err;
  ASSERT_TRUE(fs::exists(path("phi.csv")));
  const json side = json::parse(slurp(path("phi.csv.report.json")));
  EXPECT_FALSE(side.at("report").at("converged").get<bool>());
}

TEST_F(Cli, BuildWaveletHaar) {
  const std::string prefix = path("haar").string();
  const CliResult r = run("build-wavelet --filter " + filter("haar") + " --out-prefix " + prefix);
  ASSERT_EQ(r.status, 0) << r.err;
  const SampledFunction psi = read_function("haar_psi.csv");
  for (std::int64_t k = 0; k < psi.size(); ++k) {
    const double expected = psi.grid().x(k) < 0.5 ? 1.0 : -1.0;
    EXPECT_NEAR(psi.values()[static_cast<std::size_t>(k)].real(), expected, 1e-14);
  }
  const json sys = json::parse(slurp(path("haar_system.json")));
  EXPECT_EQ(sys.at("cqf").at("shift").get<int>(), 1);
  EXPECT_EQ(sys.at("psi_csv").get<std::string>(), prefix + "_psi.csv");
  EXPECT_LE(value_of(sys.at("wavelet").at("quadrature_freq").at("hg")), 1e-9);
}

TEST_F(Cli, BuildWaveletHatAndDegenerate) {
  EXPECT_EQ(run("build-wavelet --filter " + filter("hat") + " --out-prefix " + path("hat").string()).status, 0);
  const CliResult bad = run("build-wavelet --filter " + filter("degenerate") + " --out-prefix " + path("deg").string());
  EXPECT_EQ(bad.status, 1);
  EXPECT_NE(bad.err.find("DegenerateBase"), std::string::npos) << bad.err;
}

TEST_F(Cli, Fig4Coefficients) {
  const std::string prefix = path("p").string();
  const CliResult r = run("fig4 --levels 0,1,2 --J 12 --out-prefix " + prefix);
  ASSERT_EQ(r.status, 0) << r.err;
  auto coeffs = [&](int j) {
    std::ifstream is(path("p_coeffs_" + std::to_string(j) + ".csv"));
    return io::read_sequence_csv(is);
  };
  const double r2pi = std::numbers::sqrt2 / std::numbers::pi;
  EXPECT_NEAR(coeffs(0).at(0).real(), 2.0 / std::numbers::pi, 1e-5);
  EXPECT_NEAR(coeffs(1).at(0).real(), r2pi, 1e-5);
  EXPECT_NEAR(coeffs(1).at(1).real(), r2pi, 1e-5);
  EXPECT_NEAR(coeffs(2).at(1).real(), r2pi, 1e-5);
  for (int j : {0, 1, 2}) {
    const SampledFunction a = read_function("p_approx_" + std::to_string(j) + ".csv");
    EXPECT_GE(a.resolution(), 12);
  }
}

TEST_F(Cli, OutputIsDeterministic) {
  ASSERT_EQ(run("fig4 --levels 1,3 --out-prefix " + path("a").string()).status, 0);
  const std::string first = slurp(path("stdout.txt"));
  ASSERT_EQ(run("fig4 --levels 1,3 --out-prefix " + path("b").string()).status, 0);
  for (const char* f : {"_coeffs_1.csv", "_approx_1.csv", "_coeffs_3.csv", "_approx_3.csv"}) {
    EXPECT_EQ(slurp(path(std::string("a") + f)), slurp(path(std::string("b") + f))) << f;
  }
  EXPECT_EQ(first, slurp(path("stdout.txt")));
}

TEST_F(Cli, CheckPouOnCosineBump) {
  write("bump.csv", fixtures::cos2_bump(10));
  const CliResult r = run("check-pou --signal " + path("bump.csv").string());
  ASSERT_EQ(r.status, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_NEAR(value_of(j.at("constant").at(0)), 1.0, 1e-9);
  write("pulse_half.csv", fixtures::constant(1.0, 0.0, 0.5, 6));
  EXPECT_EQ(run("check-pou --signal " + path("pulse_half.csv").string()).status, 1);
}

TEST_F(Cli, SpectrumOfHat) {
  write("hat.csv", fixtures::hat(10));
  const CliResult r = run("spectrum --signal " + path("hat.csv").string() + " --out " + path("S.csv").string());
  ASSERT_EQ(r.status, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_NEAR(value_of(j.at("min_re")), 1.0 / 3.0, 1e-3);
  EXPECT_NEAR(value_of(j.at("max_re")), 1.0, 1e-3);
  std::ifstream is(path("S.csv"));
  std::string header;
  std::getline(is, header);
  EXPECT_EQ(header, "omega,re,im");
  const CliResult freq = run("spectrum --signal " + path("hat.csv").string() + " --method freq --freq-points 64 --trunc 16 --out " +
                       path("Sf.csv").string());
  ASSERT_EQ(freq.status, 0) << freq.err;
  EXPECT_NEAR(value_of(json::parse(freq.out).at("min_re")), 1.0 / 3.0, 1e-3);
}

TEST_F(Cli, ProjectRequiresOrthonormalShifts) {
  write("sine.csv", fixtures::sine(0.0, 1.0, 10));
  const CliResult bad = run("project --filter " + filter("hat") + " --signal " + path("sine.csv").string() + " --out-prefix " +
                      path("p").string());
  EXPECT_EQ(bad.status, 1);
  EXPECT_NE(bad.err.find("NonOrthogonalFamily"), std::string::npos) << bad.err;
  const CliResult good = run("project --filter " + filter("haar") + " --signal " + path("sine.csv").string() +
                       " --levels 0,2 --out-prefix " + path("p").string());
  ASSERT_EQ(good.status, 0) << good.err;
  EXPECT_TRUE(fs::exists(path("p_coeffs_2.csv")));
  const json j = json::parse(good.out);
  EXPECT_LT(value_of(j.at("levels").at(1).at("error")), value_of(j.at("levels").at(0).at("error")));
}

}  // namespace
}  // namespace mrakit
