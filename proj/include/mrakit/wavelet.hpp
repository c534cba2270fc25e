#pragma once

// Wavelets psi = sum_n g_n D T^n phi built on a multiresolution system, with
// the wavelet quadrature identities and the CQF sufficiency check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <utility>

#include "mrakit/error.hpp"
#include "mrakit/mra.hpp"
#include "mrakit/sequence.hpp"
#include "mrakit/signal.hpp"
#include "mrakit/spectra.hpp"

namespace mrakit {

struct CqfParams {
  std::int64_t shift = 0;
  CqfSign sign = CqfSign::plus;
};

struct WaveletSystem {
  MRASystem base;
  FilterSequence g;
  SampledFunction psi;                // at resolution J_phi + 1
  std::optional<CqfParams> cqf;       // set when g came from cqf(h, N, sign)
  double rebuild_residual = 0.0;
};

namespace detail {

// psi(x_i) = sqrt2 sum_n g_n phi(2 x_i - n), evaluated index by index.
inline double pointwise_rebuild_defect(const FilterSequence& g, const SampledFunction& phi, const SampledFunction& psi) {
  const std::int64_t step = std::int64_t{1} << std::max(0, phi.resolution());
  double defect = 0.0;
  for (std::int64_t k = 0; k < psi.size(); ++k) {
    const std::int64_t i = psi.grid().first + k;
    Complex v{};
    for (std::int64_t n = g.offset(); n <= g.last(); ++n) v += g.at(n) * phi.at_index(i - n * step);
    defect = std::max(defect, std::abs(std::numbers::sqrt2 * v - psi.values()[static_cast<std::size_t>(k)]));
  }
  return defect;
}

}  // namespace detail

/// psi = sum_n g_n D T^n phi. Refuses an unconverged base unless `allow_unconverged`.
inline WaveletSystem build_wavelet(const MRASystem& sys, const FilterSequence& g, bool allow_unconverged = false) {
  if (!sys.report.converged && !allow_unconverged) {
    throw Error(ErrorCode::DegenerateBase, "the cascade for the scaling function did not converge");
  }
  WaveletSystem ws{sys, g, dilation_step(g, sys.phi), std::nullopt, 0.0};
  if (sys.phi.resolution() >= 0) ws.rebuild_residual = detail::pointwise_rebuild_defect(g, sys.phi, ws.psi);
  return ws;
}

/// Wavelet from the conjugate quadrature filter g_n = sign (-1)^n h*_{N-n};
/// N defaults to length(h) - 1.
inline WaveletSystem build_cqf_wavelet(const MRASystem& sys, std::optional<std::int64_t> shift = std::nullopt,
                                       CqfSign sign = CqfSign::plus, bool allow_unconverged = false) {
  const CqfParams params{shift.value_or(sys.h.size() - 1), sign};
  WaveletSystem ws = build_wavelet(sys, cqf(sys.h, params.shift, params.sign), allow_unconverged);
  ws.cqf = params;
  return ws;
}

/// psi~(w) = (sqrt2/2) g(w/2) phi~(w/2), with phi~ supplied as a callable.
template <class PhiTilde>
  requires std::invocable<PhiTilde&, double>
FourierSamples wavelet_freq(const FilterSequence& g, PhiTilde&& phi_tilde, std::span<const double> omegas) {
  FourierSamples out{{omegas.begin(), omegas.end()}, std::vector<Complex>(omegas.size())};
  for (std::size_t m = 0; m < omegas.size(); ++m) {
    const double half = omegas[m] / 2.0;
    out.values[m] = (std::numbers::sqrt2 / 2.0) * dtft_at(g, half) * Complex(phi_tilde(half));
  }
  return out;
}

/// Same, with phi~ from the truncated infinite product of h.
inline FourierSamples wavelet_freq(const FilterSequence& g, const FilterSequence& h, std::span<const double> omegas,
                                   int N = kDefaultProductTerms) {
  const double r = check_admissibility(h).residual;
  if (r > kAdmissibilityLimit) throw Error(ErrorCode::InadmissibleFilter, "|sum h_n - sqrt2| = " + std::to_string(r));
  return wavelet_freq(g, [&](double w) { return scaling_fn_freq_at(h, w, N); }, omegas);
}

struct WaveletQuadrature {
  double hh = 0.0;
  double gg = 0.0;
  double hg = 0.0;
};

namespace detail {

inline SampledFunction phi_at_psi_resolution(const WaveletSystem& ws) {
  return resample(ws.base.phi, ws.psi.resolution());
}

}  // namespace detail

/// Defects of <phi|T^n phi>, <psi|T^n psi> and <phi|T^n psi> against their
/// two-scale expansions through R_phiphi, over |n| <= n_max. Every
/// correlation is taken on psi's grid.
inline WaveletQuadrature check_wavelet_quadrature_time(const WaveletSystem& ws,
                                                       std::int64_t n_max = kDefaultCorrelationRange) {
  const FilterSequence& h = ws.base.h;
  const FilterSequence& g = ws.g;
  const SampledFunction phi = detail::phi_at_psi_resolution(ws);
  const std::int64_t reach =
      std::max({detail::correlation_reach(h, h, n_max), detail::correlation_reach(g, g, n_max), detail::correlation_reach(h, g, n_max)});
  const FilterSequence R = autocorrelation(phi, phi, reach);
  const FilterSequence R_psi = autocorrelation(ws.psi, ws.psi, n_max);
  const FilterSequence R_cross = autocorrelation(phi, ws.psi, n_max);
  WaveletQuadrature q;
  for (std::int64_t n = -n_max; n <= n_max; ++n) {
    q.hh = std::max(q.hh, std::abs(detail::two_scale_correlation(h, h, R, n) - R.at(n)));
    q.gg = std::max(q.gg, std::abs(detail::two_scale_correlation(g, g, R, n) - R_psi.at(n)));
    q.hg = std::max(q.hg, std::abs(detail::two_scale_correlation(h, g, R, n) - R_cross.at(n)));
  }
  return q;
}

/// Grid defects of
///   |h|^2 S_pp + shifted = 2 S_pp(2w),
///   |g|^2 S_pp + shifted = 2 S_qq(2w),
///   h g* S_pp + shifted = 2 S_pq(2w),
/// where p = phi and q = psi.
inline WaveletQuadrature check_wavelet_quadrature_freq(const WaveletSystem& ws, std::int64_t M = kDefaultSpectrumPoints,
                                                       std::int64_t n_max = kDefaultCorrelationRange) {
  detail::require_even_grid(M);
  const SampledFunction phi = detail::phi_at_psi_resolution(ws);
  const SpectrumSamples S = power_spectrum_time(phi, phi, n_max, M);
  const SpectrumSamples S_psi = power_spectrum_time(ws.psi, ws.psi, n_max, M);
  const SpectrumSamples S_cross = power_spectrum_time(phi, ws.psi, n_max, M);
  const SpectrumSamples H = dtft(ws.base.h, M);
  const SpectrumSamples G = dtft(ws.g, M);
  const std::int64_t half = M / 2;
  WaveletQuadrature q;
  for (std::int64_t m = 0; m < M; ++m) {
    const Complex hh = std::norm(H[m]) * S[m] + std::norm(H[m + half]) * S[m + half];
    const Complex gg = std::norm(G[m]) * S[m] + std::norm(G[m + half]) * S[m + half];
    const Complex hg = H[m] * std::conj(G[m]) * S[m] + H[m + half] * std::conj(G[m + half]) * S[m + half];
    q.hh = std::max(q.hh, std::abs(hh - 2.0 * S[2 * m]));
    q.gg = std::max(q.gg, std::abs(gg - 2.0 * S_psi[2 * m]));
    q.hg = std::max(q.hg, std::abs(hg - 2.0 * S_cross[2 * m]));
  }
  return q;
}

struct CqfSufficiency {
  double residual = 0.0;      // ||g(pi)| - sqrt2|
  Complex value{};            // g(pi), sign included
  double bridge = 0.0;        // ||g^(-1)| - |g(pi)||
};

inline CqfSufficiency cqf_sufficiency(const FilterSequence& g) {
  const Complex at_pi = dtft_at(g, std::numbers::pi);
  const Complex at_minus_one = ztransform_eval(g, -1.0);
  return {std::abs(std::abs(at_pi) - std::numbers::sqrt2), at_pi, std::abs(std::abs(at_minus_one) - std::abs(at_pi))};
}

}  // namespace mrakit
