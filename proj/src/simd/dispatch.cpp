#include <atomic>
#include <cstdlib>
#include <string>

#include "schurlab/errors.hpp"
#include "schurlab/simd/kernels.hpp"

namespace schurlab::simd {
namespace detail {
extern const KernelTable kScalarTable;
#if defined(SCHURLAB_BUILD_AVX2)
extern const KernelTable kAvx2Table;
#endif
}  // namespace detail

namespace {

bool cpu_has_avx2() {
#if defined(SCHURLAB_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa best_isa() { return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar; }

Isa initial_isa() {
  if (const char* env = std::getenv("SCHURLAB_ISA")) {
    const Isa wanted = parse_isa(env);
    if (isa_supported(wanted)) return wanted;
  }
  return best_isa();
}

std::atomic<const KernelTable*>& active_table() {
  static std::atomic<const KernelTable*> table{&kernels_for(initial_isa())};
  return table;
}

}  // namespace

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
      return cpu_has_avx2();
  }
  return false;
}

const KernelTable& kernels_for(Isa isa) {
  if (!isa_supported(isa)) {
    throw DomainError("instruction set '" + std::string(isa_name(isa)) + "' is not available on this machine");
  }
#if defined(SCHURLAB_BUILD_AVX2)
  if (isa == Isa::Avx2) return detail::kAvx2Table;
#endif
  return detail::kScalarTable;
}

const KernelTable& kernels() { return *active_table().load(std::memory_order_relaxed); }

void select_isa(Isa isa) { active_table().store(&kernels_for(isa)); }

Isa active_isa() { return kernels().isa; }

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

Isa parse_isa(std::string_view name) {
  if (name == "scalar") return Isa::Scalar;
  if (name == "avx2") return Isa::Avx2;
  if (name == "auto") return best_isa();
  throw DomainError("unknown instruction set '" + std::string(name) + "' (expected scalar, avx2 or auto)");
}

}  // namespace schurlab::simd
