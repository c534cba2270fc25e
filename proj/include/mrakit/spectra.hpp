#pragma once

// Unitary Fourier transform of sampled functions, correlation sequences,
// power spectra, Riesz bounds, Battle-Lemarie orthogonalization and the
// Poisson summation residuals.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "mrakit/error.hpp"
#include "mrakit/sequence.hpp"
#include "mrakit/signal.hpp"

namespace mrakit {

struct FourierSamples {
  std::vector<double> omegas;
  std::vector<Complex> values;
};

/// omegas = -Omega + m * step for m in [0, 2 Omega / step).
inline std::vector<double> symmetric_frequency_grid(double omega_max, double step) {
  if (!(omega_max > 0.0) || !(step > 0.0)) throw Error(ErrorCode::BadGrid, "frequency span and step must be positive");
  const auto count = static_cast<std::int64_t>(std::llround(2.0 * omega_max / step));
  if (count < 1) throw Error(ErrorCode::BadGrid, "frequency grid is empty");
  std::vector<double> omegas(static_cast<std::size_t>(count));
  for (std::int64_t m = 0; m < count; ++m) omegas[static_cast<std::size_t>(m)] = -omega_max + static_cast<double>(m) * step;
  return omegas;
}

/// Riemann sum (2^-J / sqrt(2 pi)) sum_k f(x_k) e^{-i w x_k}.
inline Complex fourier_at(const SampledFunction& f, double omega) {
  if (f.empty()) return {};
  const DyadicGrid& g = f.grid();
  const auto v = f.values();
  const double h = g.spacing();
  const Complex step = std::polar(1.0, -omega * h);
  Complex phase{};
  Complex acc{};
  for (std::int64_t k = 0; k < g.count; ++k) {
    // Exact phase every 64 samples keeps the recurrence from drifting.
    if (k % 64 == 0) {
      phase = std::polar(1.0, -omega * g.x(k));
    } else {
      phase *= step;
    }
    acc += v[static_cast<std::size_t>(k)] * phase;
  }
  return acc * (h / std::sqrt(2.0 * std::numbers::pi));
}

inline FourierSamples fourier_transform(const SampledFunction& f, std::span<const double> omegas) {
  FourierSamples out{{omegas.begin(), omegas.end()}, std::vector<Complex>(omegas.size())};
  for (std::size_t m = 0; m < omegas.size(); ++m) out.values[m] = fourier_at(f, omegas[m]);
  return out;
}

/// (dw / sqrt(2 pi)) sum_m F(w_m) e^{i w_m x} at each point of `grid`. The
/// caller chooses a span wide enough that F is negligible outside it.
inline SampledFunction inverse_fourier(const FourierSamples& F, const DyadicGrid& grid) {
  if (F.omegas.size() != F.values.size()) throw Error(ErrorCode::BadGrid, "omegas and values differ in length");
  if (F.omegas.size() < 2) throw Error(ErrorCode::BadGrid, "need at least two frequencies");
  const double dw = F.omegas[1] - F.omegas[0];
  const double w0 = F.omegas[0];
  const double weight = dw / std::sqrt(2.0 * std::numbers::pi);
  return sample(grid, [&](double x) {
    const Complex step = std::polar(1.0, dw * x);
    Complex phase{};
    Complex acc{};
    for (std::size_t m = 0; m < F.values.size(); ++m) {
      if (m % 64 == 0) {
        phase = std::polar(1.0, (w0 + static_cast<double>(m) * dw) * x);
      } else {
        phase *= step;
      }
      acc += F.values[m] * phase;
    }
    return acc * weight;
  });
}

// --- correlations and spectra ---------------------------------------------

namespace detail {

// <f | T^n g> without materializing the shifted copy.
inline Complex shifted_inner_product(const SampledFunction& f, const SampledFunction& g, std::int64_t n) {
  const std::int64_t s = scaled_index(n, g.resolution());
  const std::int64_t lo = std::max(f.grid().first, g.grid().first + s);
  const std::int64_t hi = std::min(f.grid().end(), g.grid().end() + s);
  Complex acc{};
  const auto fv = f.values();
  const auto gv = g.values();
  for (std::int64_t i = lo; i < hi; ++i) {
    acc += fv[static_cast<std::size_t>(i - f.grid().first)] *
           std::conj(gv[static_cast<std::size_t>(i - s - g.grid().first)]);
  }
  return acc * f.grid().spacing();
}

}  // namespace detail

/// R_fg(n) = <f | T^n g> for |n| <= n_max.
inline FilterSequence autocorrelation(const SampledFunction& f, const SampledFunction& g, std::int64_t n_max) {
  detail::require_same_resolution(f.grid(), g.grid());
  std::vector<Complex> r(static_cast<std::size_t>(2 * n_max + 1));
  for (std::int64_t n = -n_max; n <= n_max; ++n) r[static_cast<std::size_t>(n + n_max)] = detail::shifted_inner_product(f, g, n);
  return FilterSequence(-n_max, std::move(r));
}

inline constexpr std::int64_t kDefaultCorrelationRange = 16;
inline constexpr std::int64_t kDefaultSpectrumPoints = 1024;
inline constexpr std::int64_t kDefaultPeriodizationTerms = 64;

/// S_fg(w) = sum_n R_fg(n) e^{-i w n}.
inline SpectrumSamples power_spectrum_time(const SampledFunction& f, const SampledFunction& g,
                                           std::int64_t n_max = kDefaultCorrelationRange,
                                           std::int64_t M = kDefaultSpectrumPoints) {
  return dtft(autocorrelation(f, g, n_max), M);
}

enum class PeriodizationTail {
  truncate,    // plain sum over |n| <= n_trunc
  richardson,  // 2 S_N - S_{N/2}, cancelling the leading 1/N tail
};

/// S_fg(w) = 2 pi sum_n f~(w + 2 pi n) g~*(w + 2 pi n), truncated at n_trunc.
inline SpectrumSamples power_spectrum_freq(const SampledFunction& f, const SampledFunction& g,
                                           std::int64_t M = kDefaultSpectrumPoints,
                                           std::int64_t n_trunc = kDefaultPeriodizationTerms,
                                           PeriodizationTail tail = PeriodizationTail::richardson) {
  detail::require_even_grid(M);
  if (n_trunc < 1) throw Error(ErrorCode::InvalidValue, "n_trunc must be >= 1");
  const std::int64_t half = n_trunc / 2;
  const bool extrapolate = tail == PeriodizationTail::richardson && half >= 1;
  const bool same = &f == &g;
  std::vector<Complex> out(static_cast<std::size_t>(M));
  for (std::int64_t m = 0; m < M; ++m) {
    const double w = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(M);
    Complex full{};
    Complex inner{};
    for (std::int64_t n = -n_trunc; n <= n_trunc; ++n) {
      const double wn = w + 2.0 * std::numbers::pi * static_cast<double>(n);
      const Complex a = fourier_at(f, wn);
      const Complex b = same ? a : fourier_at(g, wn);
      const Complex term = a * std::conj(b);
      full += term;
      if (n >= -half && n <= half) inner += term;
    }
    const Complex s = extrapolate ? 2.0 * full - inner : full;
    out[static_cast<std::size_t>(m)] = 2.0 * std::numbers::pi * s;
  }
  return SpectrumSamples(std::move(out));
}

struct RieszBounds {
  double A = 0.0;
  double B = 0.0;
};

inline constexpr double kNonRealSpectrumLimit = 1e-8;

/// min / max of Re S_ff over the frequency grid.
inline RieszBounds riesz_bounds(const SampledFunction& f, std::int64_t n_max = kDefaultCorrelationRange,
                                std::int64_t M = kDefaultSpectrumPoints) {
  const SpectrumSamples S = power_spectrum_time(f, f, n_max, M);
  RieszBounds r{S[0].real(), S[0].real()};
  for (const Complex& s : S.values()) {
    if (std::abs(s.imag()) > kNonRealSpectrumLimit) {
      throw Error(ErrorCode::NonRealSpectrum, "imaginary part " + std::to_string(s.imag()));
    }
    r.A = std::min(r.A, s.real());
    r.B = std::max(r.B, s.real());
  }
  return r;
}

/// max of |R_ff(n) - delta_n| and |S_ff(w) - 1|.
inline double check_orthonormal_shifts(const SampledFunction& f, std::int64_t n_max = kDefaultCorrelationRange,
                                       std::int64_t M = kDefaultSpectrumPoints) {
  const FilterSequence R = autocorrelation(f, f, n_max);
  double residual = 0.0;
  for (std::int64_t n = -n_max; n <= n_max; ++n) residual = std::max(residual, std::abs(R.at(n) - (n == 0 ? 1.0 : 0.0)));
  const SpectrumSamples S = dtft(R, M);
  for (const Complex& s : S.values()) residual = std::max(residual, std::abs(s - 1.0));
  return residual;
}

struct BattleLemarieParams {
  std::int64_t n_max = kDefaultCorrelationRange;  // correlation range for S_ff
  std::int64_t M = kDefaultSpectrumPoints;
  std::int64_t n_coeff = 16;                      // Fourier coefficients kept of 1/sqrt(S_ff)
  std::optional<DyadicGrid> window;               // restrict the output to this grid
};

inline constexpr double kDegenerateSpectrumLimit = 1e-8;

/// f~_new = f~ / sqrt(S_ff). Since 1/sqrt(S_ff) is 2 pi periodic it is a
/// Fourier series sum_k c_k e^{-i w k}, and the map becomes sum_k c_k T^k f.
inline SampledFunction battle_lemarie(const SampledFunction& f, const BattleLemarieParams& p = {}) {
  const SpectrumSamples S = power_spectrum_time(f, f, p.n_max, p.M);
  std::vector<Complex> inv_sqrt(static_cast<std::size_t>(p.M));
  double A = S[0].real();
  for (std::int64_t m = 0; m < p.M; ++m) {
    A = std::min(A, S[m].real());
    inv_sqrt[static_cast<std::size_t>(m)] = 1.0 / std::sqrt(std::max(S[m].real(), kDegenerateSpectrumLimit));
  }
  if (A <= kDegenerateSpectrumLimit) {
    throw Error(ErrorCode::DegenerateSpectrum, "Riesz lower bound " + std::to_string(A));
  }
  const FilterSequence c = idtft(SpectrumSamples(std::move(inv_sqrt)), -p.n_coeff, p.n_coeff);
  SampledFunction out = SampledFunction::zero(f.resolution());
  for (std::int64_t k = c.offset(); k <= c.last(); ++k) out = add(out, scale(translate(f, k), c.at(k)));
  if (p.window) return restrict_to(out, *p.window);
  return out;
}

// --- Poisson summation ----------------------------------------------------

/// max over probes x of |sum_n f(x + n tau) - (sqrt(2 pi)/tau) sum_n f~(2 pi n / tau) e^{i 2 pi n x / tau}|,
/// both sums over |n| <= n_trunc. `f` and `f_tilde` are callables.
template <class Time, class Freq>
double psf_residual(Time&& f, Freq&& f_tilde, double tau, std::span<const double> probes, std::int64_t n_trunc) {
  if (!(tau > 0.0)) throw Error(ErrorCode::InvalidValue, "tau must be positive");
  const double two_pi = 2.0 * std::numbers::pi;
  double residual = 0.0;
  for (const double x : probes) {
    Complex left{};
    Complex right{};
    for (std::int64_t n = -n_trunc; n <= n_trunc; ++n) {
      const auto dn = static_cast<double>(n);
      left += Complex(f(x + dn * tau));
      right += Complex(f_tilde(two_pi * dn / tau)) * std::polar(1.0, two_pi * dn * x / tau);
    }
    right *= std::sqrt(two_pi) / tau;
    residual = std::max(residual, std::abs(left - right));
  }
  return residual;
}

inline double psf_residual(const SampledFunction& f, double tau, std::span<const double> probes, std::int64_t n_trunc) {
  return psf_residual([&f](double x) { return f(x); }, [&f](double w) { return fourier_at(f, w); }, tau, probes,
                      n_trunc);
}

/// max over probes w of |sum_n f~(w - 2 pi n / tau) - (tau/sqrt(2 pi)) sum_n f(n tau) e^{-i w n tau}|.
template <class Time, class Freq>
double ipsf_residual(Time&& f, Freq&& f_tilde, double tau, std::span<const double> probes, std::int64_t n_trunc) {
  if (!(tau > 0.0)) throw Error(ErrorCode::InvalidValue, "tau must be positive");
  const double two_pi = 2.0 * std::numbers::pi;
  double residual = 0.0;
  for (const double w : probes) {
    Complex left{};
    Complex right{};
    for (std::int64_t n = -n_trunc; n <= n_trunc; ++n) {
      const auto dn = static_cast<double>(n);
      left += Complex(f_tilde(w - two_pi * dn / tau));
      right += Complex(f(dn * tau)) * std::polar(1.0, -w * dn * tau);
    }
    right *= tau / std::sqrt(two_pi);
    residual = std::max(residual, std::abs(left - right));
  }
  return residual;
}

inline double ipsf_residual(const SampledFunction& f, double tau, std::span<const double> probes, std::int64_t n_trunc) {
  return ipsf_residual([&f](double x) { return f(x); }, [&f](double w) { return fourier_at(f, w); }, tau, probes,
                       n_trunc);
}

}  // namespace mrakit
