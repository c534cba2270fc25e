#pragma once

// Closed-form test functions, sampled exactly at grid points.

#include <cmath>
#include <cstdint>
#include <numbers>

#include "mrakit/signal.hpp"

namespace mrakit::fixtures {

/// Indicator of [0, 1).
inline SampledFunction pulse(int resolution) {
  return sample(make_grid(resolution, 0.0, 1.0), [](double) { return 1.0; });
}

/// Centered B-spline of order m (m-fold self-convolution of the pulse),
/// supported on [0, m). Evaluated by the truncated-power formula.
inline double bspline_value(int order, double x) {
  if (order == 1) return (x >= 0.0 && x < 1.0) ? 1.0 : 0.0;
  if (x <= 0.0 || x >= order) return 0.0;
  double acc = 0.0;
  double binom = 1.0;
  for (int k = 0; k <= order; ++k) {
    const double t = x - k;
    if (t > 0.0) acc += ((k % 2 == 0) ? 1.0 : -1.0) * binom * std::pow(t, order - 1);
    binom = binom * (order - k) / (k + 1);
  }
  double fact = 1.0;
  for (int i = 2; i < order; ++i) fact *= i;
  return acc / fact;
}

inline SampledFunction bspline(int order, int resolution) {
  return sample(make_grid(resolution, 0.0, order), [order](double x) { return bspline_value(order, x); });
}

/// Order-2 B-spline: the hat on [0, 2] with peak 1 at x = 1.
inline SampledFunction hat(int resolution) { return bspline(2, resolution); }

/// cos^2(pi x / 2) on |x| <= 1.
inline double cos2_bump_value(double x) {
  if (std::abs(x) > 1.0) return 0.0;
  const double c = std::cos(std::numbers::pi * x / 2.0);
  return c * c;
}

inline SampledFunction cos2_bump(int resolution) {
  return sample(make_grid(resolution, -1.0, 1.0), cos2_bump_value);
}

/// Raised cosine with roll-off beta in (0, 1].
inline double raised_cosine_value(double beta, double x) {
  const double ax = std::abs(x);
  const double a = (1.0 - beta) / 2.0;
  const double b = (1.0 + beta) / 2.0;
  if (ax < a) return 1.0;
  if (ax < b) return 0.5 * (1.0 + std::cos(std::numbers::pi / beta * (ax - a)));
  return 0.0;
}

inline SampledFunction raised_cosine(double beta, int resolution) {
  return sample(make_grid(resolution, -1.0, 1.0), [beta](double x) { return raised_cosine_value(beta, x); });
}

/// sin(pi x) on [lo, hi).
inline SampledFunction sine(double lo, double hi, int resolution) {
  return sample(make_grid(resolution, lo, hi), [](double x) { return std::sin(std::numbers::pi * x); });
}

inline double gaussian_value(double x) { return std::exp(-std::numbers::pi * x * x); }

/// exp(-pi x^2) truncated to [-half_width, half_width).
inline SampledFunction gaussian(double half_width, int resolution) {
  return sample(make_grid(resolution, -half_width, half_width), gaussian_value);
}

/// Unitary Fourier transform of exp(-pi x^2).
inline double gaussian_fourier(double omega) {
  return std::exp(-omega * omega / (4.0 * std::numbers::pi)) / std::sqrt(2.0 * std::numbers::pi);
}

inline SampledFunction constant(Complex c, double lo, double hi, int resolution) {
  return sample(make_grid(resolution, lo, hi), [c](double) { return c; });
}

}  // namespace mrakit::fixtures
