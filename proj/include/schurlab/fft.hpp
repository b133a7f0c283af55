#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace schurlab {

/// In-place complex FFT of power-of-two length, forward sign e(-jk/n).
/// Twiddles are tabulated per stage from exact angles; the butterflies run through the
/// active SIMD kernel table.
class Fft {
 public:
  explicit Fft(std::size_t n);

  std::size_t size() const noexcept { return n_; }

  void forward(std::span<std::complex<double>> data) const;
  /// Unnormalised inverse followed by division by n.
  void inverse(std::span<std::complex<double>> data) const;

 private:
  void transform(std::span<std::complex<double>> data) const;

  std::size_t n_;
  std::vector<std::size_t> bitrev_;
  // Stage s (half = 2^s) uses stage_twiddles_[half - 1 .. 2*half - 2].
  std::vector<std::complex<double>> stage_twiddles_;
};

std::size_t next_power_of_two(std::size_t n);

/// Length-m DFT X[j] = Σ_r x[r] e(-rj/m) for any m >= 1 (radix-2 when m is a power of
/// two, Bluestein's chirp convolution otherwise).
std::vector<std::complex<double>> dft(std::span<const std::complex<double>> x);

}  // namespace schurlab
