#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>

namespace schurlab::simd::detail {

// exp_sum walks the signal in blocks of kBlock terms. Each block is the dot product of
// the data with a shared table e(-k*theta), k < kBlock, scaled by the block anchor
// e(-x0*theta). Anchors advance by multiplication and are recomputed from scratch every
// kResync blocks, so rounding never accumulates over more than kResync products.
inline constexpr std::size_t kBlock = 32;
inline constexpr std::size_t kResync = 16;

/// e(-x * theta), with x * theta reduced mod 1 (including the product's rounding error)
/// before the trigonometric call.
inline std::complex<double> unit_phase(std::int64_t x, double theta) {
  const double xd = static_cast<double>(x);
  const double p = xd * theta;
  const double err = std::fma(xd, theta, -p);
  const double frac = (p - std::floor(p)) + err;
  const double angle = -2.0 * std::numbers::pi * frac;
  return {std::cos(angle), std::sin(angle)};
}

inline std::complex<double> mul(std::complex<double> a, std::complex<double> b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

/// Fills steps[k] = e(-k*theta) for k < kBlock and returns e(-kBlock*theta).
inline std::complex<double> fill_steps(double theta, std::complex<double>* steps) {
  for (std::size_t k = 0; k < kBlock; ++k) steps[k] = unit_phase(static_cast<std::int64_t>(k), theta);
  return unit_phase(static_cast<std::int64_t>(kBlock), theta);
}

}  // namespace schurlab::simd::detail
