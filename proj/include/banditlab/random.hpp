#pragma once

// Portable variate transforms on top of a 64-bit engine.
//
// The std::*_distribution classes are implementation-defined, which would make
// regret traces differ between standard libraries. Everything here consumes the
// engine through operator() only, so a seed reproduces the same numbers on any
// conforming platform.

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "banditlab/core.hpp"

namespace banditlab {

/// Uniform on the open interval (0, 1), 53-bit resolution.
inline double uniform_open01(Rng& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

/// Marsaglia polar method. The second variate of each accepted pair is
/// discarded so that every call is self-contained.
inline double standard_normal(Rng& rng) {
  for (;;) {
    const double u = 2.0 * uniform_open01(rng) - 1.0;
    const double v = 2.0 * uniform_open01(rng) - 1.0;
    const double s = u * u + v * v;
    if (s < 1.0 && s > 0.0) {
      return u * std::sqrt(-2.0 * std::log(s) / s);
    }
  }
}

/// Gamma(shape, 1) via Marsaglia & Tsang (2000); shape < 1 uses the
/// Gamma(shape + 1) * U^(1/shape) boost.
inline double gamma_variate(Rng& rng, double shape) {
  if (!(shape > 0.0) || !std::isfinite(shape)) {
    throw std::invalid_argument("gamma_variate: shape must be finite and > 0");
  }
  if (shape < 1.0) {
    const double g = gamma_variate(rng, shape + 1.0);
    return g * std::pow(uniform_open01(rng), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = standard_normal(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform_open01(rng);
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

inline double chi_square_variate(Rng& rng, double df) {
  return 2.0 * gamma_variate(rng, 0.5 * df);
}

/// Standard Student-t as Z / sqrt(chi2(df) / df); valid for any real df > 0.
inline double student_t_variate(Rng& rng, double df) {
  if (!(df > 0.0)) {
    throw std::invalid_argument("student_t_variate: df must be > 0");
  }
  const double z = standard_normal(rng);
  const double chi2 = chi_square_variate(rng, df);
  return z / std::sqrt(chi2 / df);
}

/// Uniform integer in [0, n) by rejection, free of modulo bias.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  // 2^64 mod n
  const std::uint64_t rem = (Rng::max() % n + 1) % n;
  std::uint64_t x = rng();
  if (rem == 0) return x % n;
  const std::uint64_t limit = Rng::max() - rem + 1;
  while (x >= limit) x = rng();
  return x % n;
}

}  // namespace banditlab
