#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string_view>

// Data-parallel inner loops of the spectral code. Every kernel has a portable scalar
// reference and, where the build and the CPU allow it, an AVX2+FMA variant. The active
// table is chosen once at startup (CPU probe, overridable with SCHURLAB_ISA=scalar|avx2)
// and can be switched explicitly with select_isa().
namespace schurlab::simd {

using Complex = std::complex<double>;

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  Isa isa;
  /// sum_{i<n} f[i] * e(-(first + i) * theta) for theta in [0, 1).
  Complex (*exp_sum)(const Complex* f, std::size_t n, std::int64_t first, double theta);
  /// Radix-2 butterfly: v = hi[j] * tw[j]; lo[j] += v; hi[j] = old lo[j] - v.
  void (*butterfly)(Complex* lo, Complex* hi, const Complex* tw, std::size_t half);
  /// out[i] = a[i] * b[i]; out may alias a or b.
  void (*multiply)(const Complex* a, const Complex* b, Complex* out, std::size_t n);
  double (*dot)(const double* a, const double* b, std::size_t n);
  /// sum |a[i]|^2
  double (*norm_sq)(const Complex* a, std::size_t n);
};

const KernelTable& kernels();
const KernelTable& kernels_for(Isa isa);

bool isa_supported(Isa isa);
void select_isa(Isa isa);
Isa active_isa();

std::string_view isa_name(Isa isa);
/// Accepts "scalar", "avx2" and "auto" (best supported).
Isa parse_isa(std::string_view name);

}  // namespace schurlab::simd
