#pragma once

// Dilation-equation solvers (cascade iteration and truncated infinite
// product), the multiresolution condition checks, projections onto the
// scaling subspaces and partition-of-unity tests.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mrakit/error.hpp"
#include "mrakit/sequence.hpp"
#include "mrakit/signal.hpp"
#include "mrakit/spectra.hpp"

namespace mrakit {

// --- dilation equation ----------------------------------------------------

/// sum_n h_n D T^n phi, at resolution J_phi + 1.
inline SampledFunction dilation_step(const FilterSequence& h, const SampledFunction& phi) {
  SampledFunction out = SampledFunction::zero(phi.resolution() + 1);
  for (std::int64_t n = h.offset(); n <= h.last(); ++n) {
    const Complex hn = h.at(n);
    if (hn == Complex{}) continue;
    out = add(out, scale(compose_dt(phi, 1, n), hn));
  }
  return out;
}

/// ||resample(phi, J+1) - sum h_n D T^n phi|| / ||phi||; returns ||phi|| when
/// phi is numerically zero.
inline double dilation_residual(const FilterSequence& h, const SampledFunction& phi) {
  const double n = norm(phi);
  if (n < 1e-14) return n;
  return l2_distance(resample(phi, phi.resolution() + 1), dilation_step(h, phi)) / n;
}

namespace detail {

// Values of phi at the integers n_lo..n_hi: the eigenvector of
// A[m][m'] = sqrt2 h[2m - m'] for eigenvalue 1, normalized to sum 1.
inline std::optional<SampledFunction> integer_point_seed(const FilterSequence& h, std::int64_t n_lo, std::int64_t n_hi) {
  const std::int64_t size = n_hi - n_lo + 1;
  if (size < 1) return std::nullopt;
  Eigen::MatrixXcd A(size, size);
  for (std::int64_t r = 0; r < size; ++r) {
    for (std::int64_t c = 0; c < size; ++c) {
      A(r, c) = std::numbers::sqrt2 * h.at(2 * (n_lo + r) - (n_lo + c)) - (r == c ? 1.0 : 0.0);
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(A);
  lu.setThreshold(1e-10);
  if (lu.dimensionOfKernel() != 1) return std::nullopt;
  const Eigen::VectorXcd v = lu.kernel().col(0);
  const Complex total = v.sum();
  if (std::abs(total) < 1e-12) return std::nullopt;
  std::vector<Complex> values(static_cast<std::size_t>(size));
  for (std::int64_t k = 0; k < size; ++k) values[static_cast<std::size_t>(k)] = v(k) / total;
  return SampledFunction(DyadicGrid{0, n_lo, size}, std::move(values));
}

}  // namespace detail

/// Initial iterate for the cascade: the integer samples of the solution when
/// they are determined, otherwise the unit pulse.
inline SampledFunction cascade_seed(const FilterSequence& h) {
  if (!h.empty()) {
    if (auto s = detail::integer_point_seed(h, h.offset(), h.last())) return *s;
    if (auto s = detail::integer_point_seed(h, h.offset(), h.last() - 1)) return *s;
  }
  return sample(DyadicGrid{0, 0, 1}, [](double) { return 1.0; });
}

struct CascadeParams {
  int max_iterations = 24;
  double tol = 1e-9;
  int min_resolution = 10;               // keep refining a converged iterate up to here
  std::int64_t max_samples = 1 << 22;    // stop runaway supports
  bool integer_seed = true;              // false: always start from the pulse
};

struct CascadeResult {
  SampledFunction phi;
  bool converged = false;
  int iterations_used = 0;
  double dilation_residual = 0.0;
  std::vector<double> iterate_norms;     // ||phi_k|| for k = 0, 1, ...
};

/// Fixed-point iteration phi_{k+1} = sum_n h_n D T^n phi_k.
inline CascadeResult cascade(const FilterSequence& h, const CascadeParams& p = {}) {
  if (p.max_iterations < 1) throw Error(ErrorCode::InvalidValue, "cascade needs at least one iteration");
  CascadeResult result;
  SampledFunction phi = p.integer_seed ? cascade_seed(h) : sample(DyadicGrid{0, 0, 1}, [](double) { return 1.0; });
  result.iterate_norms.push_back(norm(phi));
  int k = 0;
  while (true) {
    SampledFunction next = dilation_step(h, phi);
    ++k;
    result.iterate_norms.push_back(norm(next));
    if (!result.converged && l2_distance(next, resample(phi, next.resolution())) <= p.tol) {
      result.converged = true;
      result.iterations_used = k;
    }
    phi = std::move(next);
    if (result.converged && phi.resolution() >= p.min_resolution) break;
    if (!result.converged && k >= p.max_iterations) break;
    if (phi.size() > p.max_samples) break;
  }
  if (!result.converged) result.iterations_used = k;
  result.dilation_residual = dilation_residual(h, phi);
  if (norm(phi) < 1e-14) result.converged = false;
  result.phi = std::move(phi);
  return result;
}

inline constexpr int kDefaultProductTerms = 32;
inline constexpr double kAdmissibilityLimit = 1e-8;

struct AdmissibilityCheck {
  double residual = 0.0;     // |sum h_n - sqrt2|
  double consistency = 0.0;  // spread between the time, DTFT and z-domain forms
};

inline AdmissibilityCheck check_admissibility(const FilterSequence& h) {
  const Complex total = sums(h).total;
  const Complex at_zero = dtft_at(h, 0.0);
  const Complex at_one = ztransform_eval(h, 1.0);
  const double r_time = std::abs(total - std::numbers::sqrt2);
  const double r_freq = std::abs(at_zero - std::numbers::sqrt2);
  const double r_z = std::abs(at_one - std::numbers::sqrt2);
  return {r_time, std::max({std::abs(r_time - r_freq), std::abs(r_time - r_z), std::abs(r_freq - r_z)})};
}

/// phi~(w) = (1/sqrt(2 pi)) prod_{n=1}^{N} (sqrt2/2) h(w / 2^n).
inline Complex scaling_fn_freq_at(const FilterSequence& h, double omega, int N = kDefaultProductTerms) {
  Complex acc = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  for (int n = 1; n <= N; ++n) acc *= dtft_at(h, std::ldexp(omega, -n)) / std::numbers::sqrt2;
  return acc;
}

inline FourierSamples scaling_fn_freq(const FilterSequence& h, std::span<const double> omegas,
                                      int N = kDefaultProductTerms) {
  if (N < 1) throw Error(ErrorCode::InvalidValue, "product needs N >= 1");
  const double r = check_admissibility(h).residual;
  if (r > kAdmissibilityLimit) {
    throw Error(ErrorCode::InadmissibleFilter, "|sum h_n - sqrt2| = " + std::to_string(r));
  }
  FourierSamples out{{omegas.begin(), omegas.end()}, std::vector<Complex>(omegas.size())};
  for (std::size_t m = 0; m < omegas.size(); ++m) out.values[m] = scaling_fn_freq_at(h, omegas[m], N);
  return out;
}

// --- quadrature conditions --------------------------------------------------

namespace detail {

// sum_m sum_k x_m y*_k R(2n - m + k)
inline Complex two_scale_correlation(const FilterSequence& x, const FilterSequence& y, const FilterSequence& R,
                                     std::int64_t n) {
  Complex acc{};
  for (std::int64_t m = x.offset(); m <= x.last(); ++m) {
    for (std::int64_t k = y.offset(); k <= y.last(); ++k) acc += x.at(m) * std::conj(y.at(k)) * R.at(2 * n - m + k);
  }
  return acc;
}

inline std::int64_t correlation_reach(const FilterSequence& x, const FilterSequence& y, std::int64_t n_max) {
  const std::int64_t span_x = std::max<std::int64_t>(std::abs(x.offset()), std::abs(x.last()));
  const std::int64_t span_y = std::max<std::int64_t>(std::abs(y.offset()), std::abs(y.last()));
  return 2 * n_max + span_x + span_y;
}

}  // namespace detail

/// max over |n| <= n_max of |sum_m sum_k h_m h*_k R(2n - m + k) - R(n)|.
inline double check_quadrature_time(const FilterSequence& h, const SampledFunction& phi,
                                    std::int64_t n_max = kDefaultCorrelationRange) {
  const FilterSequence R = autocorrelation(phi, phi, detail::correlation_reach(h, h, n_max));
  double residual = 0.0;
  for (std::int64_t n = -n_max; n <= n_max; ++n) {
    residual = std::max(residual, std::abs(detail::two_scale_correlation(h, h, R, n) - R.at(n)));
  }
  return residual;
}

/// max over the grid of ||h(w)|^2 S(w) + |h(w+pi)|^2 S(w+pi) - 2 S(2w)|.
inline double check_quadrature_freq(const FilterSequence& h, const SampledFunction& phi,
                                    std::int64_t M = kDefaultSpectrumPoints,
                                    std::int64_t n_max = kDefaultCorrelationRange) {
  detail::require_even_grid(M);
  const SpectrumSamples S = power_spectrum_time(phi, phi, n_max, M);
  const SpectrumSamples H = dtft(h, M);
  double residual = 0.0;
  for (std::int64_t m = 0; m < M; ++m) {
    const Complex lhs = std::norm(H[m]) * S[m] + std::norm(H[m + M / 2]) * S[m + M / 2];
    residual = std::max(residual, std::abs(lhs - 2.0 * S[2 * m]));
  }
  return residual;
}

// --- partition of unity ---------------------------------------------------

struct PouFunctionCheck {
  double residual = 0.0;        // max of the two below
  double time_residual = 0.0;   // max |periodize(phi, 1) - c|
  double freq_residual = 0.0;   // max over 1 <= |n| <= n_trunc of sqrt(2 pi) |phi~(2 pi n)|
  Complex constant{};           // c, the mean of the periodization
};

inline PouFunctionCheck check_pou_function(const SampledFunction& phi, std::int64_t n_trunc = 16) {
  PouFunctionCheck r;
  const SampledFunction p = periodize(phi, 1);
  Complex mean{};
  for (const Complex& v : p.values()) mean += v;
  if (p.size() > 0) mean /= static_cast<double>(p.size());
  r.constant = mean;
  for (const Complex& v : p.values()) r.time_residual = std::max(r.time_residual, std::abs(v - mean));
  const double root = std::sqrt(2.0 * std::numbers::pi);
  for (std::int64_t n = 1; n <= n_trunc; ++n) {
    const double w = 2.0 * std::numbers::pi * static_cast<double>(n);
    r.freq_residual = std::max({r.freq_residual, root * std::abs(fourier_at(phi, w)), root * std::abs(fourier_at(phi, -w))});
  }
  r.residual = std::max(r.time_residual, r.freq_residual);
  return r;
}

struct PouFilterCheck {
  double alternating = 0.0;  // |sum (-1)^n h_n|
  double even_minus = 0.0;   // |sum h_{2n} - sqrt2/2|
  double odd_minus = 0.0;    // |sum h_{2n+1} - sqrt2/2|

  double max() const { return std::max({alternating, even_minus, odd_minus}); }
};

inline PouFilterCheck check_pou_filter(const FilterSequence& h) {
  const FilterSums s = sums(h);
  const double half = std::numbers::sqrt2 / 2.0;
  return {std::abs(s.alternating), std::abs(s.even - half), std::abs(s.odd - half)};
}

// --- reports --------------------------------------------------------------

struct CheckReport {
  double admissibility = 0.0;
  double dilation = 0.0;
  double filter_quadrature_time = 0.0;  // orthonormal quadrature of h alone
  double filter_quadrature_freq = 0.0;
  double quadrature_time = 0.0;         // two-scale identity with phi's correlations
  double quadrature_freq = 0.0;
  double pou_function = 0.0;
  Complex pou_constant{};
  PouFilterCheck pou_filter;
  RieszBounds riesz;
  double orthonormality = 0.0;
  double phi_tilde_zero = 0.0;          // |phi~(0)|
  double continuity = 0.0;              // max |phi~(w) - phi~(0)| for |w| <= probe radius
  bool converged = false;
  int iterations_used = 0;
};

/// Pass/fail limits applied to a CheckReport. Residual checks fail above the
/// limit; `riesz` is the smallest acceptable lower bound A, and `phi_tilde_zero`
/// the smallest acceptable |phi~(0)|.
struct Thresholds {
  double admissibility = 1e-8;
  double filter_quadrature = 1e-8;
  double pou_filter = 1e-8;
  double cqf = 1e-8;
  double dilation = 1e-4;
  double quadrature_time = 1e-4;
  double quadrature_freq = 1e-4;
  double pou_function = 1e-4;
  double orthonormal = 1e-4;
  double riesz = 1e-8;
  double phi_tilde_zero = 1e-8;
  double continuity = 1e-6;
};

struct CheckFailure {
  std::string check;
  double value = 0.0;
};

/// Conditions that make (h, phi) a multiresolution system: a converged
/// cascade, admissibility, the dilation equation, the quadrature identities,
/// a Riesz lower bound, phi~ nonzero and continuous at 0, and the filter's
/// zero at z = -1. Orthonormality of the shifts is not required.
inline std::vector<CheckFailure> mra_failures(const CheckReport& r, const Thresholds& t = {}) {
  std::vector<CheckFailure> f;
  if (!r.converged) f.push_back({"cascade", static_cast<double>(r.iterations_used)});
  if (r.admissibility > t.admissibility) f.push_back({"admissibility", r.admissibility});
  if (r.dilation > t.dilation) f.push_back({"dilation", r.dilation});
  if (r.quadrature_time > t.quadrature_time) f.push_back({"quadrature_time", r.quadrature_time});
  if (r.quadrature_freq > t.quadrature_freq) f.push_back({"quadrature_freq", r.quadrature_freq});
  if (r.riesz.A <= t.riesz) f.push_back({"riesz", r.riesz.A});
  if (r.phi_tilde_zero <= t.phi_tilde_zero) f.push_back({"phi_tilde_zero", r.phi_tilde_zero});
  if (r.continuity > t.continuity) f.push_back({"continuity", r.continuity});
  if (r.pou_filter.max() > t.pou_filter) f.push_back({"pou_filter", r.pou_filter.max()});
  if (r.pou_function > t.pou_function) f.push_back({"pou_function", r.pou_function});
  return f;
}

inline bool is_mra(const CheckReport& r, const Thresholds& t = {}) { return mra_failures(r, t).empty(); }

struct ReportParams {
  CascadeParams cascade;
  std::int64_t n_max = kDefaultCorrelationRange;
  std::int64_t M = kDefaultSpectrumPoints;
  std::int64_t pou_terms = 16;
  double continuity_radius = 1e-6;
};

inline CheckReport report_for(const FilterSequence& h, const CascadeResult& c, const ReportParams& p = {}) {
  CheckReport r;
  r.converged = c.converged;
  r.iterations_used = c.iterations_used;
  r.dilation = c.dilation_residual;
  r.admissibility = check_admissibility(h).residual;
  const QuadratureResidual q = check_orthonormal_quadrature(h, p.M);
  r.filter_quadrature_time = q.time_residual;
  r.filter_quadrature_freq = q.freq_residual;
  r.quadrature_time = check_quadrature_time(h, c.phi, p.n_max);
  r.quadrature_freq = check_quadrature_freq(h, c.phi, p.M, p.n_max);
  const PouFunctionCheck pou = check_pou_function(c.phi, p.pou_terms);
  r.pou_function = pou.residual;
  r.pou_constant = pou.constant;
  r.pou_filter = check_pou_filter(h);
  try {
    r.riesz = riesz_bounds(c.phi, p.n_max, p.M);
  } catch (const Error&) {
    r.riesz = {0.0, 0.0};
  }
  r.orthonormality = check_orthonormal_shifts(c.phi, p.n_max, p.M);
  const Complex at_zero = fourier_at(c.phi, 0.0);
  r.phi_tilde_zero = std::abs(at_zero);
  r.continuity = std::max(std::abs(fourier_at(c.phi, p.continuity_radius) - at_zero),
                          std::abs(fourier_at(c.phi, -p.continuity_radius) - at_zero));
  return r;
}

struct MRASystem {
  FilterSequence h;
  SampledFunction phi;
  CheckReport report;
};

inline MRASystem build_mra(const FilterSequence& h, const ReportParams& p = {}) {
  CascadeResult c = cascade(h, p.cascade);
  CheckReport r = report_for(h, c, p);
  return {h, std::move(c.phi), r};
}

inline CheckReport sufficiency_report(const FilterSequence& h, const ReportParams& p = {}) {
  return build_mra(h, p).report;
}

// --- projection -----------------------------------------------------------

struct ProjectionResult {
  int level = 0;
  FilterSequence coeffs;          // c_{j,n}
  SampledFunction approximation;  // sum_n c_{j,n} D^j T^n phi
};

struct ProjectParams {
  int quadrature_extra = 8;      // inner products are taken this many levels finer
  double orthogonality_limit = 1e-3;
};

/// Orthogonal projection of f onto V_j = span{D^j T^n phi}.
inline ProjectionResult project(const SampledFunction& f, const MRASystem& sys, int j, const ProjectParams& p = {}) {
  const SampledFunction& phi = sys.phi;
  if (phi.empty()) throw Error(ErrorCode::DegenerateBase, "empty scaling function");
  const double ortho = check_orthonormal_shifts(phi);
  if (ortho > p.orthogonality_limit) {
    throw Error(ErrorCode::NonOrthogonalFamily, "shift orthonormality residual " + std::to_string(ortho));
  }
  const int J_out = std::max(f.resolution(), phi.resolution() + j);
  const int J_q = J_out + p.quadrature_extra;
  const SampledFunction f_q = resample(f, J_q);
  const SampledFunction phi_q = resample(phi, J_q - j);
  const double denom = norm(phi_q) * norm(phi_q);

  ProjectionResult out;
  out.level = j;
  if (f.empty()) {
    out.approximation = SampledFunction::zero(J_out);
    return out;
  }
  const double scale_j = std::ldexp(1.0, j);
  const auto n_lo = static_cast<std::int64_t>(std::floor(scale_j * f.grid().support_lo() - phi.grid().support_hi()));
  const auto n_hi = static_cast<std::int64_t>(std::ceil(scale_j * f.grid().support_hi() - phi.grid().support_lo()));
  std::vector<Complex> c(static_cast<std::size_t>(n_hi - n_lo + 1));
  for (std::int64_t n = n_lo; n <= n_hi; ++n) {
    c[static_cast<std::size_t>(n - n_lo)] = inner_product(f_q, compose_dt(phi_q, j, n)) / denom;
  }
  out.coeffs = FilterSequence(n_lo, std::move(c));

  const SampledFunction phi_out = resample(phi, J_out - j);
  SampledFunction approx = SampledFunction::zero(J_out);
  for (std::int64_t n = out.coeffs.offset(); n <= out.coeffs.last(); ++n) {
    approx = add(approx, scale(compose_dt(phi_out, j, n), out.coeffs.at(n)));
  }
  out.approximation = std::move(approx);
  return out;
}

}  // namespace mrakit
