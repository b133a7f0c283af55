#include "schurlab/fft.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "schurlab/errors.hpp"
#include "schurlab/simd/kernels.hpp"

namespace schurlab {
namespace {

using Complex = std::complex<double>;

// e(-num/den) with num already reduced to [0, den).
Complex root(std::uint64_t num, std::uint64_t den) {
  const double angle = -2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

std::size_t next_power_of_two(std::size_t n) { return n <= 1 ? 1 : std::bit_ceil(n); }

Fft::Fft(std::size_t n) : n_(n) {
  if (n == 0 || !std::has_single_bit(n)) throw DomainError("Fft size must be a power of two");
  const int bits = std::countr_zero(n);
  bitrev_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = 0;
    for (int b = 0; b < bits; ++b) r |= ((i >> b) & 1u) << (bits - 1 - b);
    bitrev_[i] = r;
  }
  stage_twiddles_.reserve(n);
  for (std::size_t half = 1; half < n; half *= 2) {
    for (std::size_t j = 0; j < half; ++j) stage_twiddles_.push_back(root(j, 2 * half));
  }
}

void Fft::transform(std::span<Complex> data) const {
  if (data.size() != n_) throw DomainError("Fft: buffer length does not match the plan");
  for (std::size_t i = 0; i < n_; ++i) {
    if (i < bitrev_[i]) std::swap(data[i], data[bitrev_[i]]);
  }
  const auto& k = simd::kernels();
  for (std::size_t half = 1; half < n_; half *= 2) {
    const Complex* tw = stage_twiddles_.data() + (half - 1);
    for (std::size_t block = 0; block < n_; block += 2 * half) {
      k.butterfly(data.data() + block, data.data() + block + half, tw, half);
    }
  }
}

void Fft::forward(std::span<Complex> data) const { transform(data); }

void Fft::inverse(std::span<Complex> data) const {
  for (auto& v : data) v = std::conj(v);
  transform(data);
  const double scale = 1.0 / static_cast<double>(n_);
  for (auto& v : data) v = std::conj(v) * scale;
}

std::vector<Complex> dft(std::span<const Complex> x) {
  const std::size_t m = x.size();
  if (m == 0) return {};
  if (std::has_single_bit(m)) {
    std::vector<Complex> out(x.begin(), x.end());
    Fft(m).forward(out);
    return out;
  }

  // rj = (r^2 + j^2 - (j-r)^2)/2, so X[j] = w_j Σ_r (x_r w_r) conj(w_{j-r}) with
  // w_n = e(-n^2/(2m)); n^2 is reduced mod 2m in integers to keep the chirp exact.
  const std::uint64_t two_m = 2 * static_cast<std::uint64_t>(m);
  auto chirp = [&](std::uint64_t n) { return root((n * n) % two_m, two_m); };

  const std::size_t len = next_power_of_two(2 * m - 1);
  const Fft plan(len);
  std::vector<Complex> a(len), b(len);
  std::vector<Complex> w(m);
  for (std::size_t n = 0; n < m; ++n) w[n] = chirp(n);
  for (std::size_t n = 0; n < m; ++n) a[n] = x[n] * w[n];
  b[0] = std::conj(w[0]);
  for (std::size_t n = 1; n < m; ++n) b[n] = b[len - n] = std::conj(w[n]);

  plan.forward(a);
  plan.forward(b);
  simd::kernels().multiply(a.data(), b.data(), a.data(), len);
  plan.inverse(a);

  std::vector<Complex> out(m);
  for (std::size_t j = 0; j < m; ++j) out[j] = a[j] * w[j];
  return out;
}

}  // namespace schurlab
