#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "schurlab/prime_core.hpp"
#include "schurlab/sets.hpp"

namespace schurlab {

using Complex = std::complex<double>;

/// Finitely supported f: Z -> C, stored on the window offset .. offset + size - 1.
struct FiniteSignal {
  std::int64_t offset = 0;
  std::vector<Complex> values;

  std::size_t width() const noexcept { return values.size(); }
  bool empty() const noexcept { return values.empty(); }
  Complex at(std::int64_t x) const;

  /// 1_S on the window [min S, max S]; empty signal for an empty set.
  static FiniteSignal indicator(std::span<const std::int64_t> set);
  /// 1_{-S}.
  static FiniteSignal reflected_indicator(std::span<const std::int64_t> set);
  static FiniteSignal from_real(std::int64_t offset, std::span<const double> values);
  /// F_{N,d} on the window [1, N].
  static FiniteSignal from_weight(const WeightedSequence& w);
};

/// samples[j] = f^(j / grid_size).
struct Spectrum {
  std::size_t grid_size = 0;
  std::vector<Complex> samples;
};

/// f^(θ) = Σ_x f(x) e(-xθ) by direct summation; θ is taken mod 1.
Complex dft_at(const FiniteSignal& f, double theta);

/// All M samples f^(j/M) via a fast transform. Throws DomainError when M is smaller than
/// the support width (the samples would alias).
Spectrum grid_spectrum(const FiniteSignal& f, std::size_t M);

/// (f*g)(x) = Σ_y f(x-y) g(y) on the window offset_f + offset_g, length |f| + |g| - 1,
/// through a zero-padded power-of-two FFT.
FiniteSignal convolve(const FiniteSignal& f, const FiniteSignal& g);

/// Exact integer convolution of two indicators: result[i] = #{(a,b) in A x B : a + b = lo + i}
/// with lo = min A + min B.
struct CountSignal {
  std::int64_t offset = 0;
  std::vector<std::int64_t> counts;

  std::int64_t at(std::int64_t x) const;
};
CountSignal sum_counts(std::span<const std::int64_t> a, std::span<const std::int64_t> b);

/// (1_A * 1_{-A})(n), the number of pairs (x, y) in A^2 with x - y = n.
CountSignal difference_counts(std::span<const std::int64_t> a);

/// Ordered triples (x, y, z) in B^3 with x - y = z, i.e. Σ_z 1_B(z) (1_B * 1_{-B})(z).
std::uint64_t count_schur_triples(std::span<const std::int64_t> b);

/// ⟨1_A * 1_{-A}, w⟩ = Σ_{n=1}^{w.N} (1_A * 1_{-A})(n) w(n).
double inner_product_weighted(std::span<const std::int64_t> a, const WeightedSequence& w);

}  // namespace schurlab
