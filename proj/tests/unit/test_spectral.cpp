#include <doctest.h>

#include <cmath>
#include <random>

#include "schurlab/errors.hpp"
#include "schurlab/fft.hpp"
#include "schurlab/parallel.hpp"
#include "schurlab/spectral.hpp"

using namespace schurlab;

namespace {

std::vector<Complex> naive_dft(const std::vector<Complex>& x) {
  const std::size_t m = x.size();
  std::vector<Complex> out(m);
  for (std::size_t j = 0; j < m; ++j) {
    long double re = 0, im = 0;
    for (std::size_t r = 0; r < m; ++r) {
      const long double ang = -2.0L * 3.14159265358979323846264338327950288L * static_cast<long double>((r * j) % m) / m;
      re += x[r].real() * std::cos(ang) - x[r].imag() * std::sin(ang);
      im += x[r].real() * std::sin(ang) + x[r].imag() * std::cos(ang);
    }
    out[j] = {static_cast<double>(re), static_cast<double>(im)};
  }
  return out;
}

IntSet random_set(std::mt19937_64& rng, std::size_t size, std::int64_t lo, std::int64_t hi) {
  std::uniform_int_distribution<std::int64_t> pick(lo, hi);
  std::vector<std::int64_t> v;
  for (std::size_t i = 0; i < size; ++i) v.push_back(pick(rng));
  return make_set(std::move(v));
}

std::uint64_t brute_triples(const IntSet& b) {
  std::uint64_t n = 0;
  for (const auto x : b) {
    for (const auto y : b) {
      if (contains(b, x - y)) ++n;
    }
  }
  return n;
}

}  // namespace

TEST_CASE("dft matches the naive transform for every length") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (std::size_t m = 1; m <= 70; ++m) {
    std::vector<Complex> x(m);
    for (auto& v : x) v = {g(rng), g(rng)};
    const auto fast = dft(x);
    const auto slow = naive_dft(x);
    for (std::size_t j = 0; j < m; ++j) CHECK(std::abs(fast[j] - slow[j]) < 1e-10 * std::sqrt(static_cast<double>(m)) * 10);
  }
}

TEST_CASE("fft round trip") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  for (std::size_t n = 1; n <= 4096; n *= 2) {
    std::vector<Complex> x(n), y;
    for (auto& v : x) v = {g(rng), g(rng)};
    y = x;
    const Fft f(n);
    f.forward(y);
    f.inverse(y);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y[i] - x[i]) < 1e-12);
  }
  CHECK_THROWS(Fft(12));
  CHECK(next_power_of_two(1) == 1);
  CHECK(next_power_of_two(1025) == 2048);
}

TEST_CASE("grid spectrum agrees with direct evaluation") {
  const FiniteSignal f = FiniteSignal::indicator(IntSet{-3, 0, 4, 9});
  const Spectrum s = grid_spectrum(f, 15);
  for (std::size_t j = 0; j < 15; ++j) {
    CHECK(std::abs(s.samples[j] - dft_at(f, static_cast<double>(j) / 15)) < 1e-12);
  }
  CHECK_THROWS_AS(grid_spectrum(f, 12), DomainError);
}

TEST_CASE("dft_at reduces theta mod 1") {
  const FiniteSignal f = FiniteSignal::indicator(IntSet{1, 2, 5});
  CHECK(std::abs(dft_at(f, 0.3) - dft_at(f, 5.3)) < 1e-12);
  CHECK(std::abs(dft_at(f, 0.3) - dft_at(f, -0.7)) < 1e-12);
  CHECK(dft_at(f, 0.0).real() == doctest::Approx(3.0));
  CHECK(std::abs(dft_at(FiniteSignal{}, 0.2)) == 0.0);
}

TEST_CASE("convolution equals the naive sum") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> a(1 + rng() % 40), b(1 + rng() % 40);
    for (auto& v : a) v = g(rng);
    for (auto& v : b) v = g(rng);
    const auto f = FiniteSignal::from_real(-7, a);
    const auto h = FiniteSignal::from_real(3, b);
    const auto c = convolve(f, h);
    CHECK(c.offset == -4);
    CHECK(c.width() == a.size() + b.size() - 1);
    for (std::size_t i = 0; i < c.width(); ++i) {
      double s = 0;
      for (std::size_t j = 0; j < a.size(); ++j) {
        if (i >= j && i - j < b.size()) s += a[j] * b[i - j];
      }
      CHECK(std::abs(c.values[i] - s) < 1e-10);
    }
  }
}

TEST_CASE("difference counts and Schur triples") {
  const IntSet A{1, 2, 4};
  const CountSignal d = difference_counts(A);
  CHECK(d.at(0) == 3);
  CHECK(d.at(1) == 1);
  CHECK(d.at(2) == 1);
  CHECK(d.at(3) == 1);
  CHECK(d.at(-3) == 1);
  CHECK(d.at(5) == 0);
  CHECK(count_schur_triples(IntSet{}) == 0);
  CHECK(count_schur_triples(IntSet{1, 2}) == 1);  // 2 - 1 = 1

  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    const IntSet b = random_set(rng, 1 + rng() % 120, -50, 300);
    CHECK(count_schur_triples(b) == brute_triples(b));
  }
}

TEST_CASE("inner product with the prime weight") {
  const PrimeTable t(200);
  const auto w = build_weight(20, 1, {}, t);
  const IntSet A{1, 3, 4, 8, 13};
  double expect = 0;
  for (const auto x : A) {
    for (const auto y : A) {
      if (x - y >= 1 && x - y <= 20) expect += w(static_cast<std::uint64_t>(x - y));
    }
  }
  CHECK(inner_product_weighted(A, w) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("results do not depend on the thread count") {
  std::mt19937_64 rng(7);
  const IntSet b = random_set(rng, 400, 1, 5000);
  const FiniteSignal f = FiniteSignal::indicator(b);
  set_thread_count(1);
  const auto s1 = grid_spectrum(f, 6000);
  const auto t1 = count_schur_triples(b);
  set_thread_count(4);
  const auto s4 = grid_spectrum(f, 6000);
  const auto t4 = count_schur_triples(b);
  set_thread_count(0);
  CHECK(t1 == t4);
  for (std::size_t i = 0; i < s1.samples.size(); ++i) CHECK(s1.samples[i] == s4.samples[i]);
}
