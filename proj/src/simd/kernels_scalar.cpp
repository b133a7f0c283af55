#include "phase.hpp"
#include "schurlab/simd/kernels.hpp"

namespace schurlab::simd {
namespace {

using detail::kBlock;
using detail::kResync;
using detail::mul;

Complex exp_sum(const Complex* f, std::size_t n, std::int64_t first, double theta) {
  Complex steps[kBlock];
  const Complex advance = detail::fill_steps(theta, steps);

  Complex total{0.0, 0.0};
  Complex anchor{1.0, 0.0};
  for (std::size_t b = 0, start = 0; start < n; ++b, start += kBlock) {
    if (b % kResync == 0) {
      anchor = detail::unit_phase(first + static_cast<std::int64_t>(start), theta);
    } else {
      anchor = mul(anchor, advance);
    }
    const std::size_t len = std::min(kBlock, n - start);
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < len; ++k) {
      const Complex v = f[start + k];
      re += v.real() * steps[k].real() - v.imag() * steps[k].imag();
      im += v.real() * steps[k].imag() + v.imag() * steps[k].real();
    }
    total += mul({re, im}, anchor);
  }
  return total;
}

void butterfly(Complex* lo, Complex* hi, const Complex* tw, std::size_t half) {
  for (std::size_t j = 0; j < half; ++j) {
    const Complex v = mul(hi[j], tw[j]);
    const Complex u = lo[j];
    lo[j] = u + v;
    hi[j] = u - v;
  }
}

void multiply(const Complex* a, const Complex* b, Complex* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = mul(a[i], b[i]);
}

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double norm_sq(const Complex* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  return s;
}

}  // namespace

namespace detail {
extern const KernelTable kScalarTable;
const KernelTable kScalarTable{Isa::Scalar, exp_sum, butterfly, multiply, dot, norm_sq};
}

}  // namespace schurlab::simd
