#pragma once

// Functions sampled exactly on a dyadic grid, and the translation/dilation
// operators acting on them.
//
// A SampledFunction stores values f(x_k) at x_k = (first + k) * 2^-J for
// k in [0, count), and is zero outside [first * 2^-J, (first + count) * 2^-J).
// Dilation only relabels the resolution, so D and its inverse are lossless.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mrakit/error.hpp"

namespace mrakit {

using Complex = std::complex<double>;

/// Dyadic rational numerator * 2^-exponent.
struct DyadicRational {
  std::int64_t numerator = 0;
  int exponent = 0;

  double value() const { return std::ldexp(static_cast<double>(numerator), -exponent); }
};

struct DyadicGrid {
  int resolution = 0;       // J: sample spacing is 2^-J
  std::int64_t first = 0;   // support_lo * 2^J
  std::int64_t count = 0;   // (support_hi - support_lo) * 2^J

  double spacing() const { return std::ldexp(1.0, -resolution); }
  std::int64_t end() const { return first + count; }
  double support_lo() const { return std::ldexp(static_cast<double>(first), -resolution); }
  double support_hi() const { return std::ldexp(static_cast<double>(end()), -resolution); }
  double x(std::int64_t k) const { return std::ldexp(static_cast<double>(first + k), -resolution); }

  friend bool operator==(const DyadicGrid&, const DyadicGrid&) = default;
};

namespace detail {

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::int64_t floor_mod(std::int64_t a, std::int64_t b) { return a - floor_div(a, b) * b; }

// n * 2^shift as an exact integer; throws when shift < 0 and n is not divisible.
inline std::int64_t scaled_index(std::int64_t n, int shift) {
  if (shift >= 0) return n * (std::int64_t{1} << shift);
  const std::int64_t d = std::int64_t{1} << (-shift);
  if (n % d != 0) {
    throw Error(ErrorCode::NotRepresentable,
                "shift " + std::to_string(n) + " is not a multiple of the grid spacing 2^" +
                    std::to_string(-shift));
  }
  return n / d;
}

inline void require_same_resolution(const DyadicGrid& a, const DyadicGrid& b) {
  if (a.resolution != b.resolution) {
    throw Error(ErrorCode::ResolutionMismatch, "resolutions " + std::to_string(a.resolution) +
                                                   " and " + std::to_string(b.resolution));
  }
}

}  // namespace detail

class SampledFunction {
 public:
  SampledFunction() = default;

  SampledFunction(DyadicGrid grid, std::vector<Complex> values)
      : grid_(grid), values_(std::move(values)) {
    if (grid_.count < 0 || static_cast<std::int64_t>(values_.size()) != grid_.count) {
      throw Error(ErrorCode::InvalidValue, "sample count does not match grid");
    }
    for (const Complex& v : values_) {
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw Error(ErrorCode::InvalidValue, "non-finite sample");
      }
    }
  }

  /// The zero function at resolution J (empty support).
  static SampledFunction zero(int resolution) { return SampledFunction(DyadicGrid{resolution, 0, 0}, {}); }

  const DyadicGrid& grid() const { return grid_; }
  int resolution() const { return grid_.resolution; }
  std::span<const Complex> values() const { return values_; }
  std::int64_t size() const { return grid_.count; }
  bool empty() const { return grid_.count == 0; }

  /// Sample at absolute grid index i (x = i * 2^-J); zero outside the support.
  Complex at_index(std::int64_t i) const {
    const std::int64_t k = i - grid_.first;
    return (k >= 0 && k < grid_.count) ? values_[static_cast<std::size_t>(k)] : Complex{};
  }

  /// Point evaluation. Exact on grid points; between samples the value is
  /// interpolated linearly, and the last cell holds its sample.
  Complex operator()(double x) const {
    if (empty()) return {};
    const double t = std::ldexp(x, grid_.resolution) - static_cast<double>(grid_.first);
    if (t < 0.0 || t >= static_cast<double>(grid_.count)) return {};
    const double cell = std::floor(t);
    const auto k = static_cast<std::size_t>(cell);
    const double frac = t - cell;
    if (frac == 0.0 || k + 1 >= values_.size()) return values_[k];
    return values_[k] + (values_[k + 1] - values_[k]) * frac;
  }

 private:
  DyadicGrid grid_{};
  std::vector<Complex> values_;
};

/// Samples `fn` at every point of `grid`.
template <class Fn>
SampledFunction sample(const DyadicGrid& grid, Fn&& fn) {
  std::vector<Complex> values(static_cast<std::size_t>(grid.count));
  for (std::int64_t k = 0; k < grid.count; ++k) values[static_cast<std::size_t>(k)] = Complex(fn(grid.x(k)));
  return SampledFunction(grid, std::move(values));
}

/// Grid on [lo, hi) at resolution J; both ends must be multiples of 2^-J.
inline DyadicGrid make_grid(int resolution, double lo, double hi) {
  const double a = std::ldexp(lo, resolution);
  const double b = std::ldexp(hi, resolution);
  if (a != std::floor(a) || b != std::floor(b) || b < a) {
    throw Error(ErrorCode::NotRepresentable, "support is not aligned with resolution " +
                                                 std::to_string(resolution));
  }
  return DyadicGrid{resolution, static_cast<std::int64_t>(a), static_cast<std::int64_t>(b - a)};
}

// --- transversal operators -------------------------------------------------

/// (T^n f)(x) = f(x - n).
inline SampledFunction translate(const SampledFunction& f, std::int64_t n) {
  DyadicGrid g = f.grid();
  g.first += detail::scaled_index(n, g.resolution);
  return SampledFunction(g, {f.values().begin(), f.values().end()});
}

/// Translation by a dyadic amount; requires the shift to land on the grid.
inline SampledFunction translate_by(const SampledFunction& f, DyadicRational shift) {
  DyadicGrid g = f.grid();
  g.first += detail::scaled_index(shift.numerator, g.resolution - shift.exponent);
  return SampledFunction(g, {f.values().begin(), f.values().end()});
}

/// (D^j f)(x) = 2^{j/2} f(2^j x). The sample vector is kept; only the
/// resolution moves by j.
inline SampledFunction dilate(const SampledFunction& f, int j) {
  DyadicGrid g = f.grid();
  g.resolution += j;
  if (j == 0) return SampledFunction(g, {f.values().begin(), f.values().end()});
  const double factor = (j % 2 == 0) ? std::ldexp(1.0, j / 2) : std::ldexp(std::numbers::sqrt2, (j - 1) / 2);
  std::vector<Complex> values(f.values().begin(), f.values().end());
  if (j > 0) {
    for (Complex& v : values) v *= factor;
  } else {
    // D^{-|j|}: divide by 2^{|j|/2} so that D^{-j} D^j round-trips.
    const double inv = (j % 2 == 0) ? std::ldexp(1.0, -j / 2) : std::ldexp(std::numbers::sqrt2, (-j - 1) / 2);
    for (Complex& v : values) v /= inv;
  }
  return SampledFunction(g, std::move(values));
}

/// D^j T^n f = 2^{j/2} f(2^j x - n).
inline SampledFunction compose_dt(const SampledFunction& f, int j, std::int64_t n) {
  return dilate(translate(f, n), j);
}

/// sum_n f(x - n * period), restricted to [0, period).
inline SampledFunction periodize(const SampledFunction& f, std::int64_t period) {
  if (period <= 0) throw Error(ErrorCode::InvalidValue, "period must be positive");
  const int J = f.resolution();
  const std::int64_t cells = detail::scaled_index(period, J);
  std::vector<Complex> out(static_cast<std::size_t>(cells));
  const auto values = f.values();
  for (std::int64_t k = 0; k < f.size(); ++k) {
    const std::int64_t m = detail::floor_mod(f.grid().first + k, cells);
    out[static_cast<std::size_t>(m)] += values[static_cast<std::size_t>(k)];
  }
  return SampledFunction(DyadicGrid{J, 0, cells}, std::move(out));
}

/// Left-endpoint Riemann sum of f g* with weight 2^-J.
inline Complex inner_product(const SampledFunction& f, const SampledFunction& g) {
  detail::require_same_resolution(f.grid(), g.grid());
  const std::int64_t lo = std::max(f.grid().first, g.grid().first);
  const std::int64_t hi = std::min(f.grid().end(), g.grid().end());
  Complex acc{};
  const auto fv = f.values();
  const auto gv = g.values();
  for (std::int64_t i = lo; i < hi; ++i) {
    acc += fv[static_cast<std::size_t>(i - f.grid().first)] *
           std::conj(gv[static_cast<std::size_t>(i - g.grid().first)]);
  }
  return acc * f.grid().spacing();
}

inline double norm(const SampledFunction& f) {
  double acc = 0.0;
  for (const Complex& v : f.values()) acc += std::norm(v);
  return std::sqrt(acc * f.grid().spacing());
}

/// Refines f to a finer resolution by linear interpolation between adjacent
/// samples; the last cell of the support holds its sample.
inline SampledFunction resample(const SampledFunction& f, int target_resolution) {
  const int J = f.resolution();
  if (target_resolution < J) {
    throw Error(ErrorCode::CoarseningUnsupported,
                "cannot coarsen from " + std::to_string(J) + " to " + std::to_string(target_resolution));
  }
  if (target_resolution == J) return f;
  const int shift = target_resolution - J;
  if (shift > 40) throw Error(ErrorCode::InvalidValue, "refinement factor too large");
  const std::int64_t ratio = std::int64_t{1} << shift;
  const DyadicGrid g{target_resolution, f.grid().first * ratio, f.grid().count * ratio};
  std::vector<Complex> out(static_cast<std::size_t>(g.count));
  const auto v = f.values();
  const double inv_ratio = std::ldexp(1.0, -shift);
  for (std::int64_t i = 0; i < g.count; ++i) {
    const std::int64_t k = i >> shift;
    const std::int64_t r = i & (ratio - 1);
    const Complex a = v[static_cast<std::size_t>(k)];
    if (r == 0 || k + 1 >= f.size()) {
      out[static_cast<std::size_t>(i)] = a;
    } else {
      const Complex b = v[static_cast<std::size_t>(k + 1)];
      out[static_cast<std::size_t>(i)] = a + (b - a) * (static_cast<double>(r) * inv_ratio);
    }
  }
  return SampledFunction(g, std::move(out));
}

namespace detail {

template <class Op>
SampledFunction combine_union(const SampledFunction& f, const SampledFunction& g, Op op) {
  require_same_resolution(f.grid(), g.grid());
  if (f.empty() && g.empty()) return SampledFunction::zero(f.resolution());
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  if (f.empty()) {
    lo = g.grid().first;
    hi = g.grid().end();
  } else if (g.empty()) {
    lo = f.grid().first;
    hi = f.grid().end();
  } else {
    lo = std::min(f.grid().first, g.grid().first);
    hi = std::max(f.grid().end(), g.grid().end());
  }
  std::vector<Complex> out(static_cast<std::size_t>(hi - lo));
  for (std::int64_t i = lo; i < hi; ++i) out[static_cast<std::size_t>(i - lo)] = op(f.at_index(i), g.at_index(i));
  return SampledFunction(DyadicGrid{f.resolution(), lo, hi - lo}, std::move(out));
}

}  // namespace detail

inline SampledFunction add(const SampledFunction& f, const SampledFunction& g) {
  return detail::combine_union(f, g, [](Complex a, Complex b) { return a + b; });
}

inline SampledFunction subtract(const SampledFunction& f, const SampledFunction& g) {
  return detail::combine_union(f, g, [](Complex a, Complex b) { return a - b; });
}

inline SampledFunction pointwise_multiply(const SampledFunction& f, const SampledFunction& g) {
  return detail::combine_union(f, g, [](Complex a, Complex b) { return a * b; });
}

inline SampledFunction scale(const SampledFunction& f, Complex alpha) {
  std::vector<Complex> out(f.values().begin(), f.values().end());
  for (Complex& v : out) v *= alpha;
  return SampledFunction(f.grid(), std::move(out));
}

/// Restriction of f to `window` (same resolution); samples outside f's
/// support are zero.
inline SampledFunction restrict_to(const SampledFunction& f, const DyadicGrid& window) {
  detail::require_same_resolution(f.grid(), window);
  std::vector<Complex> out(static_cast<std::size_t>(window.count));
  for (std::int64_t k = 0; k < window.count; ++k) out[static_cast<std::size_t>(k)] = f.at_index(window.first + k);
  return SampledFunction(window, std::move(out));
}

/// max |f - g| over the union support, after refining the coarser operand.
inline double max_abs_difference(const SampledFunction& f, const SampledFunction& g) {
  const int J = std::max(f.resolution(), g.resolution());
  const SampledFunction d = subtract(resample(f, J), resample(g, J));
  double m = 0.0;
  for (const Complex& v : d.values()) m = std::max(m, std::abs(v));
  return m;
}

/// L2 distance after refining the coarser operand.
inline double l2_distance(const SampledFunction& f, const SampledFunction& g) {
  const int J = std::max(f.resolution(), g.resolution());
  return norm(subtract(resample(f, J), resample(g, J)));
}

}  // namespace mrakit
