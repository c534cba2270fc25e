// mrakit command-line front end.
//
// Exit status: 0 when every check passes, 1 when a check fails (the failing
// checks and their residuals go to stderr), 2 on usage, parse or IO errors.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mrakit/mrakit.hpp"

namespace {

using mrakit::Complex;
using mrakit::ErrorCode;
using mrakit::FilterSequence;
using mrakit::SampledFunction;
using nlohmann::json;
namespace io = mrakit::io;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Limits that only the CLI applies.
struct ExtraThresholds {
  double rebuild = 1e-10;
  double wavelet_quadrature = 1e-4;
  double fig4 = 1e-5;
};

struct Failures {
  std::vector<mrakit::CheckFailure> items;

  void check(const std::string& name, double value, double limit) {
    if (!(value <= limit)) items.push_back({name, value});
  }
  void append(const std::vector<mrakit::CheckFailure>& more) { items.insert(items.end(), more.begin(), more.end()); }
  bool empty() const { return items.empty(); }

  json to_json() const {
    json out = json::array();
    for (const auto& f : items) out.push_back({{"check", f.check}, {"residual", io::decimal17(f.value)}});
    return out;
  }
  int report() const {
    for (const auto& f : items) std::cerr << "FAIL " << f.check << " residual=" << io::decimal17(f.value) << '\n';
    return empty() ? kExitPass : kExitFail;
  }
};

void add_threshold_flags(CLI::App* cmd, mrakit::Thresholds& t, ExtraThresholds& x) {
  cmd->add_option("--tol-admissibility", t.admissibility, "limit for |sum h_n - sqrt2|")->capture_default_str();
  cmd->add_option("--tol-filter-quadrature", t.filter_quadrature, "limit for the orthonormal filter quadrature")->capture_default_str();
  cmd->add_option("--tol-pou-filter", t.pou_filter, "limit for the filter's zero at z = -1")->capture_default_str();
  cmd->add_option("--tol-cqf", t.cqf, "limit for ||g(pi)| - sqrt2|")->capture_default_str();
  cmd->add_option("--tol-dilation", t.dilation, "limit for the dilation-equation residual")->capture_default_str();
  cmd->add_option("--tol-quadrature-time", t.quadrature_time, "limit for the time quadrature identity")->capture_default_str();
  cmd->add_option("--tol-quadrature-freq", t.quadrature_freq, "limit for the frequency quadrature identity")->capture_default_str();
  cmd->add_option("--tol-pou-function", t.pou_function, "limit for the partition-of-unity residual")->capture_default_str();
  cmd->add_option("--tol-orthonormal", t.orthonormal, "limit for shift orthonormality")->capture_default_str();
  cmd->add_option("--tol-riesz", t.riesz, "smallest acceptable Riesz lower bound")->capture_default_str();
  cmd->add_option("--tol-phi-tilde-zero", t.phi_tilde_zero, "smallest acceptable |phi~(0)|")->capture_default_str();
  cmd->add_option("--tol-continuity", t.continuity, "limit for |phi~(w) - phi~(0)| near 0")->capture_default_str();
  cmd->add_option("--tol-rebuild", x.rebuild, "limit for the wavelet rebuild residual")->capture_default_str();
  cmd->add_option("--tol-wavelet-quadrature", x.wavelet_quadrature, "limit for the wavelet quadrature identities")->capture_default_str();
  cmd->add_option("--tol-fig4", x.fig4, "limit for the fig4 coefficient check")->capture_default_str();
}

json thresholds_json(const mrakit::Thresholds& t) {
  return {{"admissibility", io::decimal17(t.admissibility)},   {"filter_quadrature", io::decimal17(t.filter_quadrature)},
          {"pou_filter", io::decimal17(t.pou_filter)},         {"cqf", io::decimal17(t.cqf)},
          {"dilation", io::decimal17(t.dilation)},             {"quadrature_time", io::decimal17(t.quadrature_time)},
          {"quadrature_freq", io::decimal17(t.quadrature_freq)}, {"pou_function", io::decimal17(t.pou_function)},
          {"orthonormal", io::decimal17(t.orthonormal)},       {"riesz", io::decimal17(t.riesz)},
          {"phi_tilde_zero", io::decimal17(t.phi_tilde_zero)}, {"continuity", io::decimal17(t.continuity)}};
}

json complex_json(Complex c) { return json::array({io::decimal17(c.real()), io::decimal17(c.imag())}); }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
  if (!out) throw UsageError("write failed for " + path);
}

void emit_json(const json& j, const std::string& out_path) {
  const std::string text = j.dump(2) + "\n";
  if (!out_path.empty()) write_text(out_path, text);
  std::cout << text;
}

template <class Writer>
void write_csv(const std::string& path, Writer&& w) {
  std::ostringstream ss;
  w(ss);
  write_text(path, ss.str());
}

io::NamedFilter load_filter(const std::string& path) { return io::parse_filter(io::read_file(path)); }

SampledFunction load_signal(const std::string& path, std::optional<int> resolution) {
  std::istringstream in(io::read_file(path));
  return io::read_function_csv(in, resolution);
}

mrakit::CqfSign parse_sign(int s) {
  if (s == 1) return mrakit::CqfSign::plus;
  if (s == -1) return mrakit::CqfSign::minus;
  throw UsageError("--cqf-sign must be 1 or -1");
}

int sign_value_of(mrakit::CqfSign s) { return s == mrakit::CqfSign::plus ? 1 : -1; }

// --- analyze-filter -------------------------------------------------------

struct AnalyzeOptions {
  std::string filter;
  std::int64_t M = mrakit::kDefaultSpectrumPoints;
  std::optional<std::int64_t> cqf_shift;
  int cqf_sign = 1;
  std::string out;
};

int run_analyze(const AnalyzeOptions& o, const mrakit::Thresholds& t) {
  const io::NamedFilter f = load_filter(o.filter);
  const FilterSequence& h = f.h;
  const mrakit::AdmissibilityCheck adm = mrakit::check_admissibility(h);
  const mrakit::QuadratureResidual q = mrakit::check_orthonormal_quadrature(h, o.M);
  const mrakit::PouFilterCheck pou = mrakit::check_pou_filter(h);
  const std::int64_t shift = o.cqf_shift.value_or(h.empty() ? 0 : h.size() - 1);
  const mrakit::CqfSign sign = parse_sign(o.cqf_sign);
  const FilterSequence g = mrakit::cqf(h, shift, sign);
  const mrakit::CqfSufficiency suff = mrakit::cqf_sufficiency(g);
  const mrakit::QuadratureResidual cross = mrakit::check_cross_quadrature(h, g, o.M);

  Failures fail;
  fail.check("admissibility", adm.residual, t.admissibility);
  fail.check("filter_quadrature_time", q.time_residual, t.filter_quadrature);
  fail.check("filter_quadrature_freq", q.freq_residual, t.filter_quadrature);
  fail.check("pou_filter", pou.max(), t.pou_filter);
  fail.check("cqf_cross_quadrature", cross.max(), t.filter_quadrature);
  fail.check("cqf", suff.residual, t.cqf);

  const json report = {
      {"filter", io::filter_to_json(f.name, h)},
      {"freq_points", o.M},
      {"residuals",
       {{"admissibility", io::decimal17(adm.residual)},
        {"admissibility_consistency", io::decimal17(adm.consistency)},
        {"filter_quadrature_time", io::decimal17(q.time_residual)},
        {"filter_quadrature_freq", io::decimal17(q.freq_residual)},
        {"pou_filter",
         {{"alternating", io::decimal17(pou.alternating)},
          {"even_minus", io::decimal17(pou.even_minus)},
          {"odd_minus", io::decimal17(pou.odd_minus)}}},
        {"cqf_cross_quadrature", io::decimal17(cross.max())},
        {"cqf", io::decimal17(suff.residual)}}},
      {"cqf",
       {{"shift", shift},
        {"sign", sign_value_of(sign)},
        {"g", io::filter_to_json(f.name + "_cqf", g)},
        {"g_at_pi", complex_json(suff.value)},
        {"bridge", io::decimal17(suff.bridge)}}},
      {"thresholds", thresholds_json(t)},
      {"failures", fail.to_json()},
      {"pass", fail.empty()},
  };
  emit_json(report, o.out);
  return fail.report();
}

// --- build-scaling --------------------------------------------------------

struct ScalingOptions {
  std::string filter;
  std::string method = "cascade";
  std::optional<int> iterations;
  int grid_J = 10;
  double cascade_tol = 1e-9;
  std::int64_t M = mrakit::kDefaultSpectrumPoints;
  std::int64_t n_max = mrakit::kDefaultCorrelationRange;
  double omega_max = 8 * std::numbers::pi;
  std::string out;
  std::string report;
};

int run_build_scaling(const ScalingOptions& o, const mrakit::Thresholds& t) {
  const io::NamedFilter f = load_filter(o.filter);
  const std::string report_path = o.report.empty() ? o.out + ".report.json" : o.report;
  Failures fail;
  json sidecar{{"filter", io::filter_to_json(f.name, f.h)}, {"method", o.method}, {"thresholds", thresholds_json(t)}};

  if (o.method == "cascade") {
    mrakit::ReportParams p;
    p.cascade.max_iterations = o.iterations.value_or(p.cascade.max_iterations);
    p.cascade.min_resolution = o.grid_J;
    p.cascade.tol = o.cascade_tol;
    p.M = o.M;
    p.n_max = o.n_max;
    const mrakit::MRASystem sys = mrakit::build_mra(f.h, p);
    write_csv(o.out, [&](std::ostream& os) { io::write_function_csv(os, sys.phi); });
    fail.append(mrakit::mra_failures(sys.report, t));
    sidecar["max_iterations"] = p.cascade.max_iterations;
    sidecar["report"] = io::report_to_json(sys.report);
    sidecar["phi_csv"] = o.out;
  } else {
    const int N = o.iterations.value_or(mrakit::kDefaultProductTerms);
    const double adm = mrakit::check_admissibility(f.h).residual;
    fail.check("admissibility", adm, t.admissibility);
    sidecar["terms"] = N;
    sidecar["admissibility"] = io::decimal17(adm);
    if (fail.empty()) {
      const std::vector<double> w = mrakit::symmetric_frequency_grid(o.omega_max, 2.0 * o.omega_max / static_cast<double>(o.M));
      const mrakit::FourierSamples F = mrakit::scaling_fn_freq(f.h, w, N);
      const mrakit::FourierSamples G = mrakit::scaling_fn_freq(f.h, w, N + 4);
      double change = 0.0;
      for (std::size_t m = 0; m < w.size(); ++m) change = std::max(change, std::abs(F.values[m] - G.values[m]));
      write_csv(o.out, [&](std::ostream& os) { io::write_fourier_csv(os, F); });
      sidecar["phi_tilde_csv"] = o.out;
      sidecar["phi_tilde_zero"] = complex_json(mrakit::scaling_fn_freq_at(f.h, 0.0, N));
      sidecar["change_with_four_more_terms"] = io::decimal17(change);
    }
  }
  sidecar["failures"] = fail.to_json();
  sidecar["pass"] = fail.empty();
  write_text(report_path, sidecar.dump(2) + "\n");
  std::cout << sidecar.dump(2) << '\n';
  return fail.report();
}

// --- build-wavelet --------------------------------------------------------

struct WaveletOptions {
  std::string filter;
  std::string wavelet_filter;
  std::optional<std::int64_t> cqf_shift;
  int cqf_sign = 1;
  std::optional<int> iterations;
  int grid_J = 10;
  std::int64_t M = mrakit::kDefaultSpectrumPoints;
  std::int64_t n_max = mrakit::kDefaultCorrelationRange;
  bool allow_unconverged = false;
  std::string out_prefix;
};

json quadrature_json(const mrakit::WaveletQuadrature& q) {
  return {{"hh", io::decimal17(q.hh)}, {"gg", io::decimal17(q.gg)}, {"hg", io::decimal17(q.hg)}};
}

int run_build_wavelet(const WaveletOptions& o, const mrakit::Thresholds& t, const ExtraThresholds& x) {
  const io::NamedFilter f = load_filter(o.filter);
  mrakit::ReportParams p;
  p.cascade.max_iterations = o.iterations.value_or(p.cascade.max_iterations);
  p.cascade.min_resolution = o.grid_J;
  p.M = o.M;
  p.n_max = o.n_max;
  const mrakit::MRASystem sys = mrakit::build_mra(f.h, p);

  mrakit::WaveletSystem ws;
  std::string g_name;
  if (o.wavelet_filter.empty()) {
    ws = mrakit::build_cqf_wavelet(sys, o.cqf_shift, parse_sign(o.cqf_sign), o.allow_unconverged);
    g_name = f.name + "_cqf";
  } else {
    const io::NamedFilter g = load_filter(o.wavelet_filter);
    ws = mrakit::build_wavelet(sys, g.h, o.allow_unconverged);
    g_name = g.name;
  }

  const std::string phi_path = o.out_prefix + "_phi.csv";
  const std::string psi_path = o.out_prefix + "_psi.csv";
  write_csv(phi_path, [&](std::ostream& os) { io::write_function_csv(os, sys.phi); });
  write_csv(psi_path, [&](std::ostream& os) { io::write_function_csv(os, ws.psi); });

  const mrakit::WaveletQuadrature qt = mrakit::check_wavelet_quadrature_time(ws, o.n_max);
  const mrakit::WaveletQuadrature qf = mrakit::check_wavelet_quadrature_freq(ws, o.M, o.n_max);
  const mrakit::CqfSufficiency suff = mrakit::cqf_sufficiency(ws.g);

  Failures fail;
  fail.append(mrakit::mra_failures(sys.report, t));
  fail.check("rebuild", ws.rebuild_residual, x.rebuild);
  fail.check("wavelet_quadrature_time", std::max({qt.hh, qt.gg, qt.hg}), x.wavelet_quadrature);
  fail.check("wavelet_quadrature_freq", std::max({qf.hh, qf.gg, qf.hg}), x.wavelet_quadrature);
  if (ws.cqf) fail.check("cqf", suff.residual, t.cqf);

  json cqf_json = nullptr;
  if (ws.cqf) cqf_json = {{"shift", ws.cqf->shift}, {"sign", sign_value_of(ws.cqf->sign)}};
  const json system = {
      {"h", io::filter_to_json(f.name, sys.h)},
      {"g", io::filter_to_json(g_name, ws.g)},
      {"cqf", cqf_json},
      {"phi_csv", phi_path},
      {"psi_csv", psi_path},
      {"base_report", io::report_to_json(sys.report)},
      {"wavelet",
       {{"rebuild", io::decimal17(ws.rebuild_residual)},
        {"quadrature_time", quadrature_json(qt)},
        {"quadrature_freq", quadrature_json(qf)},
        {"cqf_sufficiency",
         {{"residual", io::decimal17(suff.residual)},
          {"g_at_pi", complex_json(suff.value)},
          {"bridge", io::decimal17(suff.bridge)}}}}},
      {"thresholds", thresholds_json(t)},
      {"failures", fail.to_json()},
      {"pass", fail.empty()},
  };
  write_text(o.out_prefix + "_system.json", system.dump(2) + "\n");
  std::cout << system.dump(2) << '\n';
  return fail.report();
}

// --- project and fig4 -----------------------------------------------------

struct ProjectOptions {
  std::string filter;
  std::string signal;
  std::optional<int> grid_J;
  std::vector<int> levels{0};
  std::optional<int> iterations;
  std::string out_prefix;
};

json projection_json(const mrakit::ProjectionResult& r, const SampledFunction& f) {
  json coeffs = json::array();
  for (std::int64_t n = r.coeffs.offset(); n <= r.coeffs.last() && !r.coeffs.empty(); ++n) {
    coeffs.push_back({{"n", n}, {"c", complex_json(r.coeffs.at(n))}});
  }
  return {{"level", r.level}, {"error", io::decimal17(mrakit::l2_distance(f, r.approximation))}, {"coeffs", coeffs}};
}

void write_projection(const std::string& prefix, const mrakit::ProjectionResult& r) {
  const std::string j = std::to_string(r.level);
  write_csv(prefix + "_coeffs_" + j + ".csv", [&](std::ostream& os) { io::write_sequence_csv(os, r.coeffs); });
  write_csv(prefix + "_approx_" + j + ".csv", [&](std::ostream& os) { io::write_function_csv(os, r.approximation); });
}

int run_project(const ProjectOptions& o) {
  const io::NamedFilter flt = load_filter(o.filter);
  const SampledFunction f = load_signal(o.signal, o.grid_J);
  mrakit::ReportParams p;
  p.cascade.max_iterations = o.iterations.value_or(p.cascade.max_iterations);
  const mrakit::MRASystem sys = mrakit::build_mra(flt.h, p);
  Failures fail;
  if (!sys.report.converged) fail.check("cascade", sys.report.iterations_used, -1.0);
  json levels = json::array();
  if (fail.empty()) {
    for (int j : o.levels) {
      const mrakit::ProjectionResult r = mrakit::project(f, sys, j);
      write_projection(o.out_prefix, r);
      levels.push_back(projection_json(r, f));
    }
  }
  std::cout << json{{"filter", flt.name}, {"levels", levels}, {"failures", fail.to_json()}}.dump(2) << '\n';
  return fail.report();
}

struct Fig4Options {
  std::vector<int> levels{0, 1, 2};
  int grid_J = 12;
  std::string out_prefix;
};

/// (2^{j/2} / pi) [cos(2^-j n pi) - cos(2^-j (n+1) pi)].
double fig4_coefficient(int j, std::int64_t n) {
  const double s = std::ldexp(1.0, -j);
  return std::pow(2.0, j / 2.0) / std::numbers::pi *
         (std::cos(s * static_cast<double>(n) * std::numbers::pi) - std::cos(s * static_cast<double>(n + 1) * std::numbers::pi));
}

int run_fig4(const Fig4Options& o, const ExtraThresholds& x) {
  const FilterSequence haar(0, {std::numbers::sqrt2 / 2, std::numbers::sqrt2 / 2});
  const mrakit::MRASystem sys = mrakit::build_mra(haar);
  const SampledFunction f = mrakit::fixtures::sine(0.0, 1.0, o.grid_J);
  Failures fail;
  json levels = json::array();
  for (int j : o.levels) {
    if (j < 0) throw UsageError("fig4 levels must be non-negative");
    const mrakit::ProjectionResult r = mrakit::project(f, sys, j);
    write_projection(o.out_prefix, r);
    double worst = 0.0;
    const std::int64_t count = std::int64_t{1} << j;
    for (std::int64_t n = 0; n < count; ++n) worst = std::max(worst, std::abs(r.coeffs.at(n) - fig4_coefficient(j, n)));
    fail.check("fig4_coefficients_level_" + std::to_string(j), worst, x.fig4);
    json entry = projection_json(r, f);
    entry["max_closed_form_error"] = io::decimal17(worst);
    levels.push_back(entry);
  }
  std::cout << json{{"signal", "sin(pi x) on [0,1)"}, {"grid_J", o.grid_J}, {"levels", levels}, {"failures", fail.to_json()}}.dump(2)
            << '\n';
  return fail.report();
}

// --- check-pou and spectrum -----------------------------------------------

struct PouOptions {
  std::string signal;
  std::optional<int> grid_J;
  std::int64_t trunc = 16;
  std::string out;
};

int run_check_pou(const PouOptions& o, const mrakit::Thresholds& t) {
  const SampledFunction f = load_signal(o.signal, o.grid_J);
  const mrakit::PouFunctionCheck c = mrakit::check_pou_function(f, o.trunc);
  Failures fail;
  fail.check("pou_function", c.residual, t.pou_function);
  const json report = {
      {"residual", io::decimal17(c.residual)},
      {"time_residual", io::decimal17(c.time_residual)},
      {"freq_residual", io::decimal17(c.freq_residual)},
      {"constant", complex_json(c.constant)},
      {"trunc", o.trunc},
      {"failures", fail.to_json()},
      {"pass", fail.empty()},
  };
  emit_json(report, o.out);
  return fail.report();
}

struct SpectrumOptions {
  std::string signal;
  std::string cross;
  std::optional<int> grid_J;
  std::string method = "time";
  std::int64_t M = mrakit::kDefaultSpectrumPoints;
  std::optional<std::int64_t> trunc;
  std::string tail = "richardson";
  std::string out;
};

int run_spectrum(const SpectrumOptions& o) {
  const SampledFunction f = load_signal(o.signal, o.grid_J);
  const SampledFunction g = o.cross.empty() ? f : load_signal(o.cross, o.grid_J);
  const auto tail = o.tail == "truncate" ? mrakit::PeriodizationTail::truncate : mrakit::PeriodizationTail::richardson;
  const mrakit::SpectrumSamples S =
      o.method == "time" ? mrakit::power_spectrum_time(f, g, o.trunc.value_or(mrakit::kDefaultCorrelationRange), o.M)
      : o.cross.empty()  ? mrakit::power_spectrum_freq(f, f, o.M, o.trunc.value_or(mrakit::kDefaultPeriodizationTerms), tail)
                         : mrakit::power_spectrum_freq(f, g, o.M, o.trunc.value_or(mrakit::kDefaultPeriodizationTerms), tail);
  write_csv(o.out, [&](std::ostream& os) { io::write_spectrum_csv(os, S); });
  double lo = INFINITY, hi = -INFINITY, imag = 0.0;
  for (std::int64_t m = 0; m < S.points(); ++m) {
    lo = std::min(lo, S[m].real());
    hi = std::max(hi, S[m].real());
    imag = std::max(imag, std::abs(S[m].imag()));
  }
  std::cout << json{{"method", o.method},
                    {"freq_points", o.M},
                    {"min_re", io::decimal17(lo)},
                    {"max_re", io::decimal17(hi)},
                    {"max_abs_im", io::decimal17(imag)},
                    {"out", o.out}}
                   .dump(2)
            << '\n';
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Construct and verify multiresolution analyses and wavelet systems."};
  app.name("mrakit");
  app.require_subcommand(1, 1);

  mrakit::Thresholds t;
  ExtraThresholds x;

  AnalyzeOptions analyze;
  auto* c_analyze = app.add_subcommand("analyze-filter", "Filter-level admissibility, quadrature, zero-at-pi and CQF checks");
  c_analyze->add_option("--filter", analyze.filter, "filter JSON")->required();
  c_analyze->add_option("--freq-points", analyze.M, "DTFT grid size (even)")->capture_default_str();
  c_analyze->add_option("--cqf-shift", analyze.cqf_shift, "CQF shift N (default length - 1)");
  c_analyze->add_option("--cqf-sign", analyze.cqf_sign, "CQF sign, 1 or -1")->capture_default_str();
  c_analyze->add_option("--out", analyze.out, "also write the report JSON here");
  add_threshold_flags(c_analyze, t, x);

  ScalingOptions scaling;
  auto* c_scaling = app.add_subcommand("build-scaling", "Solve the dilation equation and report the MRA checks");
  c_scaling->add_option("--filter", scaling.filter, "filter JSON")->required();
  c_scaling->add_option("--method", scaling.method, "cascade or product")
      ->check(CLI::IsMember({"cascade", "product"}))
      ->capture_default_str();
  c_scaling->add_option("--iterations", scaling.iterations, "cascade iterations (default 24) or product factors (default 32)");
  c_scaling->add_option("--grid-J", scaling.grid_J, "resolution the cascade output is refined to")->capture_default_str();
  c_scaling->add_option("--cascade-tol", scaling.cascade_tol, "cascade convergence tolerance")->capture_default_str();
  c_scaling->add_option("--freq-points", scaling.M, "spectral grid size; product method: number of frequencies")->capture_default_str();
  c_scaling->add_option("--trunc", scaling.n_max, "correlation range for the quadrature and Riesz checks")->capture_default_str();
  c_scaling->add_option("--omega-max", scaling.omega_max, "product method: frequencies cover [-omega-max, omega-max)")
      ->capture_default_str();
  c_scaling->add_option("--out", scaling.out, "phi CSV (cascade) or phi~ CSV (product)")->required();
  c_scaling->add_option("--report", scaling.report, "sidecar report path (default OUT.report.json)");
  add_threshold_flags(c_scaling, t, x);

  WaveletOptions wavelet;
  auto* c_wavelet = app.add_subcommand("build-wavelet", "Build psi = sum g_n D T^n phi and check the wavelet identities");
  c_wavelet->add_option("--filter", wavelet.filter, "scaling filter JSON")->required();
  c_wavelet->add_option("--wavelet-filter", wavelet.wavelet_filter, "wavelet filter JSON (default: CQF of the scaling filter)");
  c_wavelet->add_option("--cqf-shift", wavelet.cqf_shift, "CQF shift N (default length - 1)");
  c_wavelet->add_option("--cqf-sign", wavelet.cqf_sign, "CQF sign, 1 or -1")->capture_default_str();
  c_wavelet->add_option("--iterations", wavelet.iterations, "cascade iterations");
  c_wavelet->add_option("--grid-J", wavelet.grid_J, "resolution of phi")->capture_default_str();
  c_wavelet->add_option("--freq-points", wavelet.M, "spectral grid size (even)")->capture_default_str();
  c_wavelet->add_option("--trunc", wavelet.n_max, "correlation range")->capture_default_str();
  c_wavelet->add_flag("--allow-unconverged", wavelet.allow_unconverged, "build on an unconverged cascade");
  c_wavelet->add_option("--out-prefix", wavelet.out_prefix, "writes PREFIX_phi.csv, PREFIX_psi.csv, PREFIX_system.json")
      ->required();
  add_threshold_flags(c_wavelet, t, x);

  ProjectOptions proj;
  auto* c_project = app.add_subcommand("project", "Project a signal onto the scaling subspaces V_j");
  c_project->add_option("--filter", proj.filter, "scaling filter JSON")->required();
  c_project->add_option("--signal", proj.signal, "signal CSV")->required();
  c_project->add_option("--grid-J", proj.grid_J, "signal resolution (needed for one-sample files)");
  c_project->add_option("--levels", proj.levels, "comma-separated levels j")->delimiter(',')->capture_default_str();
  c_project->add_option("--iterations", proj.iterations, "cascade iterations");
  c_project->add_option("--out-prefix", proj.out_prefix, "writes PREFIX_coeffs_j.csv and PREFIX_approx_j.csv")->required();
  add_threshold_flags(c_project, t, x);

  PouOptions pou;
  auto* c_pou = app.add_subcommand("check-pou", "Partition-of-unity check of a sampled function");
  c_pou->add_option("--signal", pou.signal, "function CSV")->required();
  c_pou->add_option("--grid-J", pou.grid_J, "resolution (needed for one-sample files)");
  c_pou->add_option("--trunc", pou.trunc, "frequency samples 2 pi n, 1 <= |n| <= trunc")->capture_default_str();
  c_pou->add_option("--out", pou.out, "also write the report JSON here");
  add_threshold_flags(c_pou, t, x);

  SpectrumOptions spec;
  auto* c_spec = app.add_subcommand("spectrum", "Auto- or cross-power spectrum of sampled functions");
  c_spec->add_option("--signal", spec.signal, "function CSV")->required();
  c_spec->add_option("--cross", spec.cross, "second function CSV for a cross spectrum");
  c_spec->add_option("--grid-J", spec.grid_J, "resolution (needed for one-sample files)");
  c_spec->add_option("--method", spec.method, "time (correlations) or freq (periodization)")
      ->check(CLI::IsMember({"time", "freq"}))
      ->capture_default_str();
  c_spec->add_option("--freq-points", spec.M, "grid size (even)")->capture_default_str();
  c_spec->add_option("--trunc", spec.trunc, "correlation range (time, default 16) or periodization terms (freq, default 64)");
  c_spec->add_option("--tail", spec.tail, "periodization tail: richardson or truncate")
      ->check(CLI::IsMember({"richardson", "truncate"}))
      ->capture_default_str();
  c_spec->add_option("--out", spec.out, "spectrum CSV")->required();

  Fig4Options fig4;
  auto* c_fig4 = app.add_subcommand("fig4", "Haar approximations of sin(pi x) at several levels");
  c_fig4->add_option("--levels", fig4.levels, "comma-separated levels j")->delimiter(',')->capture_default_str();
  c_fig4->add_option("--grid-J,--J", fig4.grid_J, "signal resolution")->capture_default_str();
  c_fig4->add_option("--out-prefix", fig4.out_prefix, "writes PREFIX_coeffs_j.csv and PREFIX_approx_j.csv")->required();
  add_threshold_flags(c_fig4, t, x);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (c_analyze->parsed()) return run_analyze(analyze, t);
    if (c_scaling->parsed()) return run_build_scaling(scaling, t);
    if (c_wavelet->parsed()) return run_build_wavelet(wavelet, t, x);
    if (c_project->parsed()) return run_project(proj);
    if (c_pou->parsed()) return run_check_pou(pou, t);
    if (c_spec->parsed()) return run_spectrum(spec);
    if (c_fig4->parsed()) return run_fig4(fig4, x);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const mrakit::Error& e) {
    const bool usage = e.code() == ErrorCode::ParseError || e.code() == ErrorCode::BadGrid || e.code() == ErrorCode::InvalidValue;
    if (usage) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitUsage;
    }
    std::cerr << "FAIL " << e.what() << '\n';
    return kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
