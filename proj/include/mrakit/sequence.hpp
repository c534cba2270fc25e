#pragma once

// Finitely supported sequences: convolution, DTFT and its inverse on a
// uniform frequency grid, z-transform evaluation, conjugate quadrature
// filters and the orthonormal quadrature checks.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "mrakit/error.hpp"
#include "mrakit/signal.hpp"

namespace mrakit {

/// coeffs[k] = x_{offset + k}. Stored in canonical form: leading and
/// trailing exact zeros are trimmed and the zero sequence has offset 0.
class FilterSequence {
 public:
  FilterSequence() = default;

  FilterSequence(std::int64_t offset, std::vector<Complex> coeffs) : offset_(offset), coeffs_(std::move(coeffs)) {
    for (const Complex& c : coeffs_) {
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
        throw Error(ErrorCode::InvalidValue, "non-finite coefficient");
      }
    }
    canonicalize();
  }

  FilterSequence(std::int64_t offset, std::initializer_list<double> coeffs)
      : FilterSequence(offset, std::vector<Complex>(coeffs.begin(), coeffs.end())) {}

  static FilterSequence delta(std::int64_t n, Complex value = 1.0) { return FilterSequence(n, {value}); }

  std::int64_t offset() const { return offset_; }
  /// Index of the last stored coefficient (offset - 1 for the zero sequence).
  std::int64_t last() const { return offset_ + static_cast<std::int64_t>(coeffs_.size()) - 1; }
  std::int64_t size() const { return static_cast<std::int64_t>(coeffs_.size()); }
  bool empty() const { return coeffs_.empty(); }
  std::span<const Complex> coeffs() const { return coeffs_; }

  Complex at(std::int64_t n) const {
    const std::int64_t k = n - offset_;
    return (k >= 0 && k < size()) ? coeffs_[static_cast<std::size_t>(k)] : Complex{};
  }

  friend bool operator==(const FilterSequence&, const FilterSequence&) = default;

 private:
  void canonicalize() {
    auto nonzero = [](const Complex& c) { return c != Complex{}; };
    const auto first = std::find_if(coeffs_.begin(), coeffs_.end(), nonzero);
    if (first == coeffs_.end()) {
      coeffs_.clear();
      offset_ = 0;
      return;
    }
    const auto last = std::find_if(coeffs_.rbegin(), coeffs_.rend(), nonzero).base();
    offset_ += first - coeffs_.begin();
    coeffs_ = std::vector<Complex>(first, last);
  }

  std::int64_t offset_ = 0;
  std::vector<Complex> coeffs_;
};

/// Samples of a 2pi-periodic function at w_m = 2 pi m / M, m in [0, M).
class SpectrumSamples {
 public:
  explicit SpectrumSamples(std::vector<Complex> values) : values_(std::move(values)) {
    if (values_.size() < 2 || values_.size() % 2 != 0) {
      throw Error(ErrorCode::BadGrid, "spectrum grid needs an even number >= 2 of points");
    }
  }

  std::int64_t points() const { return static_cast<std::int64_t>(values_.size()); }
  std::span<const Complex> values() const { return values_; }
  double omega(std::int64_t m) const { return 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(points()); }

  /// Value at grid index m, wrapped periodically.
  Complex operator[](std::int64_t m) const {
    return values_[static_cast<std::size_t>(detail::floor_mod(m, points()))];
  }

 private:
  std::vector<Complex> values_;
};

namespace detail {

inline void require_even_grid(std::int64_t M) {
  if (M < 2 || M % 2 != 0) throw Error(ErrorCode::BadGrid, "frequency grid size must be even and >= 2, got " + std::to_string(M));
}

// e^{-i 2 pi r / M} with r reduced mod M first so that large m*n stay accurate.
inline Complex unit_root(std::int64_t r, std::int64_t M) {
  const std::int64_t k = floor_mod(r, M);
  const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(M);
  return {std::cos(angle), std::sin(angle)};
}

inline Complex integer_power(Complex z, std::int64_t e) {
  if (e < 0) {
    z = 1.0 / z;
    e = -e;
  }
  Complex result = 1.0;
  while (e > 0) {
    if (e & 1) result *= z;
    z *= z;
    e >>= 1;
  }
  return result;
}

inline bool lexicographic_less(const FilterSequence& a, const FilterSequence& b) {
  if (a.offset() != b.offset()) return a.offset() < b.offset();
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::int64_t k = 0; k < a.size(); ++k) {
    const Complex x = a.coeffs()[static_cast<std::size_t>(k)];
    const Complex y = b.coeffs()[static_cast<std::size_t>(k)];
    if (x.real() != y.real()) return x.real() < y.real();
    if (x.imag() != y.imag()) return x.imag() < y.imag();
  }
  return false;
}

}  // namespace detail

/// (x * y)_n = sum_m x_m y_{n-m}. Operands are put in a canonical order
/// first, so the result does not depend on argument order at all.
inline FilterSequence convolve(const FilterSequence& x, const FilterSequence& y) {
  if (x.empty() || y.empty()) return {};
  const bool swap = detail::lexicographic_less(y, x);
  const FilterSequence& a = swap ? y : x;
  const FilterSequence& b = swap ? x : y;
  std::vector<Complex> out(static_cast<std::size_t>(a.size() + b.size() - 1));
  for (std::int64_t i = 0; i < a.size(); ++i) {
    for (std::int64_t j = 0; j < b.size(); ++j) {
      out[static_cast<std::size_t>(i + j)] += a.coeffs()[static_cast<std::size_t>(i)] * b.coeffs()[static_cast<std::size_t>(j)];
    }
  }
  return FilterSequence(a.offset() + b.offset(), std::move(out));
}

/// x(w) = sum_n x_n e^{-i w n} at an arbitrary frequency.
inline Complex dtft_at(const FilterSequence& x, double omega) {
  Complex acc{};
  for (std::int64_t k = 0; k < x.size(); ++k) {
    const double n = static_cast<double>(x.offset() + k);
    acc += x.coeffs()[static_cast<std::size_t>(k)] * Complex(std::cos(omega * n), -std::sin(omega * n));
  }
  return acc;
}

inline SpectrumSamples dtft(const FilterSequence& x, std::int64_t M) {
  detail::require_even_grid(M);
  std::vector<Complex> out(static_cast<std::size_t>(M));
  for (std::int64_t m = 0; m < M; ++m) {
    Complex acc{};
    for (std::int64_t k = 0; k < x.size(); ++k) {
      acc += x.coeffs()[static_cast<std::size_t>(k)] * detail::unit_root(m * (x.offset() + k), M);
    }
    out[static_cast<std::size_t>(m)] = acc;
  }
  return SpectrumSamples(std::move(out));
}

/// x_n = (1/M) sum_m F(w_m) e^{i w_m n} for n in [n_lo, n_hi].
inline FilterSequence idtft(const SpectrumSamples& spectrum, std::int64_t n_lo, std::int64_t n_hi) {
  const std::int64_t M = spectrum.points();
  if (n_hi < n_lo) return {};
  if (M < n_hi - n_lo + 1) {
    throw Error(ErrorCode::GridTooCoarse, "M = " + std::to_string(M) + " cannot resolve " +
                                              std::to_string(n_hi - n_lo + 1) + " coefficients");
  }
  std::vector<Complex> out(static_cast<std::size_t>(n_hi - n_lo + 1));
  for (std::int64_t n = n_lo; n <= n_hi; ++n) {
    Complex acc{};
    for (std::int64_t m = 0; m < M; ++m) acc += spectrum[m] * std::conj(detail::unit_root(m * n, M));
    out[static_cast<std::size_t>(n - n_lo)] = acc / static_cast<double>(M);
  }
  return FilterSequence(n_lo, std::move(out));
}

/// x^(z) = sum_n x_n z^{-n}.
inline Complex ztransform_eval(const FilterSequence& x, Complex z) {
  if (z == Complex{}) {
    if (x.last() > 0 && !x.empty()) throw Error(ErrorCode::ZeroArgument, "z = 0 with negative powers of z present");
    return x.at(0);
  }
  Complex acc{};
  for (std::int64_t k = 0; k < x.size(); ++k) {
    acc += x.coeffs()[static_cast<std::size_t>(k)] * detail::integer_power(z, -(x.offset() + k));
  }
  return acc;
}

struct FilterSums {
  Complex total;
  Complex alternating;  // sum (-1)^n x_n
  Complex even;         // sum x_{2n}
  Complex odd;          // sum x_{2n+1}
};

inline FilterSums sums(const FilterSequence& x) {
  FilterSums s{};
  for (std::int64_t k = 0; k < x.size(); ++k) {
    const std::int64_t n = x.offset() + k;
    const Complex v = x.coeffs()[static_cast<std::size_t>(k)];
    s.total += v;
    if (detail::floor_mod(n, 2) == 0) {
      s.even += v;
      s.alternating += v;
    } else {
      s.odd += v;
      s.alternating -= v;
    }
  }
  return s;
}

enum class CqfSign : int { plus = 1, minus = -1 };

inline double sign_value(CqfSign s) { return static_cast<double>(static_cast<int>(s)); }

/// g_n = sign (-1)^n conj(h_{N-n}).
inline FilterSequence cqf(const FilterSequence& h, std::int64_t shift, CqfSign sign) {
  if (h.empty()) return {};
  const std::int64_t lo = shift - h.last();
  const std::int64_t hi = shift - h.offset();
  std::vector<Complex> out(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t n = lo; n <= hi; ++n) {
    const double parity = (detail::floor_mod(n, 2) == 0) ? 1.0 : -1.0;
    out[static_cast<std::size_t>(n - lo)] = sign_value(sign) * parity * std::conj(h.at(shift - n));
  }
  return FilterSequence(lo, std::move(out));
}

/// sum_m x_m conj(y_{m - 2n}) for every n with overlapping support.
inline FilterSequence decimated_correlation(const FilterSequence& x, const FilterSequence& y) {
  if (x.empty() || y.empty()) return {};
  const std::int64_t n_lo = -detail::floor_div(y.last() - x.offset(), 2);
  const std::int64_t n_hi = detail::floor_div(x.last() - y.offset(), 2);
  std::vector<Complex> out;
  for (std::int64_t n = n_lo; n <= n_hi; ++n) {
    Complex acc{};
    for (std::int64_t m = x.offset(); m <= x.last(); ++m) acc += x.at(m) * std::conj(y.at(m - 2 * n));
    out.push_back(acc);
  }
  return FilterSequence(n_lo, std::move(out));
}

struct QuadratureResidual {
  double time_residual = 0.0;
  double freq_residual = 0.0;
  double max() const { return std::max(time_residual, freq_residual); }
};

/// Orthonormal quadrature: sum_m x_m x*_{m-2n} = delta_n and
/// |x(w)|^2 + |x(w + pi)|^2 = 2, reported as max-norm defects.
inline QuadratureResidual check_orthonormal_quadrature(const FilterSequence& x, std::int64_t M) {
  detail::require_even_grid(M);
  QuadratureResidual r;
  const FilterSequence c = decimated_correlation(x, x);
  const std::int64_t lo = std::min<std::int64_t>(c.offset(), 0);
  const std::int64_t hi = std::max<std::int64_t>(c.last(), 0);
  for (std::int64_t n = lo; n <= hi; ++n) {
    r.time_residual = std::max(r.time_residual, std::abs(c.at(n) - (n == 0 ? 1.0 : 0.0)));
  }
  const SpectrumSamples X = dtft(x, M);
  for (std::int64_t m = 0; m < M; ++m) {
    r.freq_residual = std::max(r.freq_residual, std::abs(std::norm(X[m]) + std::norm(X[m + M / 2]) - 2.0));
  }
  return r;
}

/// Cross quadrature: sum_m x_m y*_{m-2n} = 0 and x y* + x(.+pi) y*(.+pi) = 0.
inline QuadratureResidual check_cross_quadrature(const FilterSequence& x, const FilterSequence& y, std::int64_t M) {
  detail::require_even_grid(M);
  QuadratureResidual r;
  const FilterSequence c = decimated_correlation(x, y);
  for (const Complex& v : c.coeffs()) r.time_residual = std::max(r.time_residual, std::abs(v));
  const SpectrumSamples X = dtft(x, M);
  const SpectrumSamples Y = dtft(y, M);
  for (std::int64_t m = 0; m < M; ++m) {
    r.freq_residual = std::max(r.freq_residual,
                               std::abs(X[m] * std::conj(Y[m]) + X[m + M / 2] * std::conj(Y[m + M / 2])));
  }
  return r;
}

}  // namespace mrakit
