#include "schurlab/spectral.hpp"

#include <cmath>
#include <string>

#include "schurlab/errors.hpp"
#include "schurlab/fft.hpp"
#include "schurlab/simd/kernels.hpp"

namespace schurlab {

Complex FiniteSignal::at(std::int64_t x) const {
  if (x < offset || x >= offset + static_cast<std::int64_t>(values.size())) return {0.0, 0.0};
  return values[static_cast<std::size_t>(x - offset)];
}

FiniteSignal FiniteSignal::indicator(std::span<const std::int64_t> set) {
  FiniteSignal f;
  if (set.empty()) return f;
  const auto [lo, hi] = std::minmax_element(set.begin(), set.end());
  f.offset = *lo;
  f.values.assign(static_cast<std::size_t>(*hi - *lo) + 1, Complex{0.0, 0.0});
  for (const auto x : set) f.values[static_cast<std::size_t>(x - f.offset)] = 1.0;
  return f;
}

FiniteSignal FiniteSignal::reflected_indicator(std::span<const std::int64_t> set) {
  std::vector<std::int64_t> negated(set.size());
  std::transform(set.begin(), set.end(), negated.begin(), [](std::int64_t x) { return -x; });
  return indicator(negated);
}

FiniteSignal FiniteSignal::from_real(std::int64_t offset, std::span<const double> values) {
  FiniteSignal f;
  f.offset = offset;
  f.values.assign(values.begin(), values.end());
  return f;
}

FiniteSignal FiniteSignal::from_weight(const WeightedSequence& w) {
  FiniteSignal f;
  f.offset = 1;
  if (w.N > 0) f.values.assign(w.values.begin() + 1, w.values.end());
  return f;
}

Complex dft_at(const FiniteSignal& f, double theta) {
  if (f.empty()) return {0.0, 0.0};
  const double reduced = theta - std::floor(theta);
  return simd::kernels().exp_sum(f.values.data(), f.values.size(), f.offset, reduced >= 1.0 ? 0.0 : reduced);
}

Spectrum grid_spectrum(const FiniteSignal& f, std::size_t M) {
  if (M == 0 || M < f.width()) {
    throw DomainError("grid_spectrum: grid size " + std::to_string(M) + " is below the support width " +
                      std::to_string(f.width()) + " (samples would alias)");
  }
  // Fold onto residues mod M; the window spans at most M consecutive integers so each
  // residue receives at most one value.
  std::vector<Complex> folded(M, Complex{0.0, 0.0});
  const auto m = static_cast<std::int64_t>(M);
  for (std::size_t i = 0; i < f.width(); ++i) {
    auto r = (f.offset + static_cast<std::int64_t>(i)) % m;
    if (r < 0) r += m;
    folded[static_cast<std::size_t>(r)] = f.values[i];
  }
  return {M, dft(folded)};
}

FiniteSignal convolve(const FiniteSignal& f, const FiniteSignal& g) {
  FiniteSignal out;
  if (f.empty() || g.empty()) return out;
  const std::size_t width = f.width() + g.width() - 1;
  const std::size_t len = next_power_of_two(width);
  const Fft plan(len);
  std::vector<Complex> a(len, Complex{0.0, 0.0}), b(len, Complex{0.0, 0.0});
  std::copy(f.values.begin(), f.values.end(), a.begin());
  std::copy(g.values.begin(), g.values.end(), b.begin());
  plan.forward(a);
  plan.forward(b);
  simd::kernels().multiply(a.data(), b.data(), a.data(), len);
  plan.inverse(a);
  out.offset = f.offset + g.offset;
  out.values.assign(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(width));
  return out;
}

std::int64_t CountSignal::at(std::int64_t x) const {
  if (x < offset || x >= offset + static_cast<std::int64_t>(counts.size())) return 0;
  return counts[static_cast<std::size_t>(x - offset)];
}

CountSignal sum_counts(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  CountSignal out;
  if (a.empty() || b.empty()) return out;
  const FiniteSignal c = convolve(FiniteSignal::indicator(a), FiniteSignal::indicator(b));
  out.offset = c.offset;
  out.counts.resize(c.width());
  // Entries are integers bounded by min(|A|, |B|); FFT rounding stays far below 1/2.
  for (std::size_t i = 0; i < c.width(); ++i) out.counts[i] = std::llround(c.values[i].real());
  return out;
}

CountSignal difference_counts(std::span<const std::int64_t> a) {
  std::vector<std::int64_t> negated(a.size());
  std::transform(a.begin(), a.end(), negated.begin(), [](std::int64_t x) { return -x; });
  return sum_counts(a, negated);
}

std::uint64_t count_schur_triples(std::span<const std::int64_t> b) {
  const CountSignal diffs = difference_counts(b);
  std::uint64_t total = 0;
  for (const auto z : b) total += static_cast<std::uint64_t>(diffs.at(z));
  return total;
}

double inner_product_weighted(std::span<const std::int64_t> a, const WeightedSequence& w) {
  if (a.empty() || w.N == 0) return 0.0;
  const CountSignal diffs = difference_counts(a);
  std::vector<double> counts(w.N + 1, 0.0);
  for (std::uint64_t n = 1; n <= w.N; ++n) counts[n] = static_cast<double>(diffs.at(static_cast<std::int64_t>(n)));
  return simd::kernels().dot(counts.data(), w.values.data(), w.N + 1);
}

}  // namespace schurlab
