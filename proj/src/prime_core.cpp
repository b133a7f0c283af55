#include "schurlab/prime_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "schurlab/errors.hpp"

namespace schurlab {

void ExceptionalContext::validate() const {
  if (dbar == 0) throw DomainError("exceptional modulus dbar must be positive");
  if (dbar != 1 && !is_exceptional) {
    throw DomainError("dbar = " + std::to_string(dbar) + " requires the exceptional flag (dbar is 1 when unexceptional)");
  }
}

PrimeTable::PrimeTable(std::uint64_t limit, std::size_t budget_bytes) : limit_(limit) {
  if (limit >= std::numeric_limits<std::uint32_t>::max()) {
    throw ResourceError("sieve limit " + std::to_string(limit) + " exceeds the 32-bit table format");
  }
  // spf entries plus a generous bound on the prime list.
  const std::size_t needed = (static_cast<std::size_t>(limit) + 1) * sizeof(std::uint32_t) * 3 / 2;
  if (needed > budget_bytes) {
    throw ResourceError("sieve limit " + std::to_string(limit) + " needs about " + std::to_string(needed) +
                        " bytes, over the memory budget of " + std::to_string(budget_bytes) + " bytes");
  }

  spf_.assign(static_cast<std::size_t>(limit) + 1, 0);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::uint32_t>(i);
      primes_.push_back(static_cast<std::uint32_t>(i));
    }
    const std::uint32_t cap = spf_[i];
    for (const std::uint32_t p : primes_) {
      if (p > cap || i * p > limit) break;
      spf_[i * p] = p;
    }
  }
}

void PrimeTable::check(std::uint64_t n) const {
  if (n > limit_) {
    throw RangeError("value " + std::to_string(n) + " is beyond the sieve limit " + std::to_string(limit_));
  }
}

bool PrimeTable::is_prime(std::uint64_t n) const {
  check(n);
  return n >= 2 && spf_[n] == n;
}

std::uint32_t PrimeTable::smallest_prime_factor(std::uint64_t n) const {
  check(n);
  return spf_[n];
}

std::vector<std::pair<std::uint64_t, int>> PrimeTable::factor(std::uint64_t n) const {
  check(n);
  std::vector<std::pair<std::uint64_t, int>> out;
  while (n > 1) {
    const std::uint64_t p = spf_[n];
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  return out;
}

std::size_t PrimeTable::prime_count(std::uint64_t x) const {
  x = std::min(x, limit_);
  return static_cast<std::size_t>(std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
}

PrimeTable sieve_primes(std::uint64_t limit, std::size_t budget_bytes) { return PrimeTable(limit, budget_bytes); }

double von_mangoldt(std::uint64_t n, const PrimeTable& table) {
  if (n == 0) throw RangeError("von Mangoldt function is defined for n >= 1");
  if (n == 1) return 0.0;
  const std::uint64_t p = table.smallest_prime_factor(n);
  while (n % p == 0) n /= p;
  return n == 1 ? std::log(static_cast<double>(p)) : 0.0;
}

double psi(std::uint64_t x, std::uint64_t q, std::uint64_t a, const PrimeTable& table) {
  if (q == 0) throw DomainError("psi: modulus q must be positive");
  if (a >= q) throw DomainError("psi: residue a must satisfy 0 <= a < q");
  if (x > table.limit()) {
    throw RangeError("psi: x = " + std::to_string(x) + " is beyond the sieve limit " + std::to_string(table.limit()));
  }
  double sum = 0.0;
  for (std::uint64_t n = (a == 0 ? q : a); n <= x; n += q) sum += von_mangoldt(n, table);
  return sum;
}

WeightedSequence build_weight(std::uint64_t N, std::uint64_t d, const ExceptionalContext& ctx,
                              const PrimeTable& table) {
  ctx.validate();
  if (d == 0) throw DomainError("build_weight: d must be positive");
  WeightedSequence w;
  w.N = N;
  w.d_total = ctx.dbar * d;
  const std::uint64_t required = w.d_total * N + 1;
  if (required > table.limit()) {
    throw RangeError("build_weight: sieve limit " + std::to_string(table.limit()) + " is too small, need at least " +
                     std::to_string(required));
  }
  w.values.assign(N + 1, 0.0);
  for (std::uint64_t n = 1; n <= N; ++n) w.values[n] = von_mangoldt(w.d_total * n + 1, table);
  return w;
}

ArithValues arith_functions(std::uint64_t n) {
  if (n == 0) throw DomainError("arith_functions: n must be positive");
  std::uint64_t phi = n;
  int mu = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    phi = phi / p * (p - 1);
    mu = e > 1 ? 0 : -mu;
  }
  if (n > 1) {
    phi = phi / n * (n - 1);
    mu = -mu;
  }
  return {phi, mu};
}

std::uint64_t euler_phi(std::uint64_t n) { return arith_functions(n).phi; }

int moebius(std::uint64_t n) { return arith_functions(n).mu; }

}  // namespace schurlab
