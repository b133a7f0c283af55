#include <immintrin.h>

#include "phase.hpp"
#include "schurlab/simd/kernels.hpp"

namespace schurlab::simd {
namespace {

using detail::kBlock;
using detail::kResync;
using detail::mul;

// Two complex doubles per register: [re0, im0, re1, im1].
inline __m256d load2(const Complex* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(Complex* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_movedup_pd(b);
  const __m256d b_im = _mm256_permute_pd(b, 0xF);
  const __m256d a_sw = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

Complex exp_sum(const Complex* f, std::size_t n, std::int64_t first, double theta) {
  alignas(32) Complex steps[kBlock];
  alignas(32) Complex swapped[kBlock];
  const Complex advance = detail::fill_steps(theta, steps);
  for (std::size_t k = 0; k < kBlock; ++k) swapped[k] = {steps[k].imag(), steps[k].real()};

  Complex total{0.0, 0.0};
  Complex anchor{1.0, 0.0};
  for (std::size_t b = 0, start = 0; start < n; ++b, start += kBlock) {
    if (b % kResync == 0) {
      anchor = detail::unit_phase(first + static_cast<std::int64_t>(start), theta);
    } else {
      anchor = mul(anchor, advance);
    }
    const std::size_t len = std::min(kBlock, n - start);
    const std::size_t pairs = len / 2;
    // straight accumulates [fr*sr, fi*si], cross accumulates [fr*si, fi*sr].
    __m256d straight = _mm256_setzero_pd();
    __m256d cross = _mm256_setzero_pd();
    for (std::size_t p = 0; p < pairs; ++p) {
      const __m256d v = load2(f + start + 2 * p);
      straight = _mm256_fmadd_pd(v, _mm256_load_pd(reinterpret_cast<const double*>(steps + 2 * p)), straight);
      cross = _mm256_fmadd_pd(v, _mm256_load_pd(reinterpret_cast<const double*>(swapped + 2 * p)), cross);
    }
    alignas(32) double s[4], c[4];
    _mm256_store_pd(s, straight);
    _mm256_store_pd(c, cross);
    double re = (s[0] - s[1]) + (s[2] - s[3]);
    double im = (c[0] + c[1]) + (c[2] + c[3]);
    if (len % 2 != 0) {
      const Complex v = f[start + len - 1];
      const Complex w = steps[len - 1];
      re += v.real() * w.real() - v.imag() * w.imag();
      im += v.real() * w.imag() + v.imag() * w.real();
    }
    total += mul({re, im}, anchor);
  }
  return total;
}

void butterfly(Complex* lo, Complex* hi, const Complex* tw, std::size_t half) {
  std::size_t j = 0;
  for (; j + 2 <= half; j += 2) {
    const __m256d v = cmul(load2(hi + j), load2(tw + j));
    const __m256d u = load2(lo + j);
    store2(lo + j, _mm256_add_pd(u, v));
    store2(hi + j, _mm256_sub_pd(u, v));
  }
  for (; j < half; ++j) {
    const Complex v = mul(hi[j], tw[j]);
    const Complex u = lo[j];
    lo[j] = u + v;
    hi[j] = u - v;
  }
}

void multiply(const Complex* a, const Complex* b, Complex* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) store2(out + i, cmul(load2(a + i), load2(b + i)));
  for (; i < n; ++i) out[i] = mul(a[i], b[i]);
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double norm_sq(const Complex* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = load2(a + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  return s;
}

}  // namespace

namespace detail {
extern const KernelTable kAvx2Table;
const KernelTable kAvx2Table{Isa::Avx2, exp_sum, butterfly, multiply, dot, norm_sq};
}

}  // namespace schurlab::simd
