#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "schurlab/errors.hpp"
#include "schurlab/prime_core.hpp"

namespace schurlab {
namespace {

std::uint64_t residue(std::int64_t a, std::uint64_t q) {
  const auto r = a % static_cast<std::int64_t>(q);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(q) : r);
}

}  // namespace

double ramanujan_sum(std::uint64_t q, std::int64_t a) {
  if (q == 0) throw DomainError("ramanujan_sum: q must be positive");
  const std::uint64_t g = std::gcd(residue(a, q), q);  // gcd(0, q) = q
  const std::uint64_t r = q / g;
  const ArithValues outer = arith_functions(r);
  return static_cast<double>(outer.mu) * static_cast<double>(euler_phi(q)) / static_cast<double>(outer.phi);
}

std::complex<double> restricted_exp_sum(std::uint64_t q, std::int64_t a, std::uint64_t m_modulus) {
  if (q == 0 || m_modulus == 0) throw DomainError("restricted_exp_sum: q and m_modulus must be positive");
  const std::uint64_t ar = residue(a, q);
  if (std::gcd(ar, q) != 1) {
    throw DomainError("restricted_exp_sum: requires gcd(a, q) = 1, got a = " + std::to_string(a) +
                      ", q = " + std::to_string(q));
  }
  std::complex<double> sum{0.0, 0.0};
  for (std::uint64_t m = 0; m < q; ++m) {
    if (std::gcd((m_modulus % q) * m + 1, q) != 1) continue;
    const std::uint64_t phase = (ar * m) % q;
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(phase) / static_cast<double>(q);
    sum += std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return sum;
}

}  // namespace schurlab
