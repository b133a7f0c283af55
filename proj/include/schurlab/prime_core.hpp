#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace schurlab {

/// The modulus d̄ that an exceptional zero would force into every construction. Nothing
/// here detects exceptional zeros; d̄ is supplied by the caller (1 when unexceptional).
struct ExceptionalContext {
  std::uint64_t dbar = 1;
  bool is_exceptional = false;

  static ExceptionalContext unexceptional() { return {}; }
  static ExceptionalContext exceptional(std::uint64_t dbar) { return {dbar, true}; }

  /// Throws DomainError unless dbar >= 1 and (dbar == 1 or is_exceptional).
  void validate() const;
};

/// Smallest-prime-factor table over [0, limit], built by a linear sieve.
class PrimeTable {
 public:
  static constexpr std::size_t kDefaultBudgetBytes = std::size_t{1} << 30;

  explicit PrimeTable(std::uint64_t limit, std::size_t budget_bytes = kDefaultBudgetBytes);

  std::uint64_t limit() const noexcept { return limit_; }

  bool is_prime(std::uint64_t n) const;
  /// 0 for n < 2.
  std::uint32_t smallest_prime_factor(std::uint64_t n) const;
  /// (prime, exponent) pairs in increasing prime order; empty for n = 1.
  std::vector<std::pair<std::uint64_t, int>> factor(std::uint64_t n) const;

  std::span<const std::uint32_t> primes() const noexcept { return primes_; }
  /// Number of primes <= x.
  std::size_t prime_count(std::uint64_t x) const;

 private:
  void check(std::uint64_t n) const;

  std::uint64_t limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
};

PrimeTable sieve_primes(std::uint64_t limit, std::size_t budget_bytes = PrimeTable::kDefaultBudgetBytes);

/// Λ(n): log p when n = p^k, otherwise 0. Natural logarithm throughout.
double von_mangoldt(std::uint64_t n, const PrimeTable& table);

/// ψ(x; q, a) = Σ_{n <= x, n ≡ a (mod q)} Λ(n), by direct summation in increasing n.
double psi(std::uint64_t x, std::uint64_t q, std::uint64_t a, const PrimeTable& table);

/// F_{N,d}(n) = Λ(d_total·n + 1)·1_[N](n) with d_total = d̄·d.
struct WeightedSequence {
  std::uint64_t N = 0;
  std::uint64_t d_total = 1;
  /// values[n] for n = 0..N; values[0] is always 0 so that indices match n.
  std::vector<double> values;

  double operator()(std::uint64_t n) const { return n >= 1 && n <= N ? values[n] : 0.0; }
};

WeightedSequence build_weight(std::uint64_t N, std::uint64_t d, const ExceptionalContext& ctx,
                              const PrimeTable& table);

struct ArithValues {
  std::uint64_t phi;
  int mu;
};

/// Euler totient and Möbius function by trial-division factorisation.
ArithValues arith_functions(std::uint64_t n);
std::uint64_t euler_phi(std::uint64_t n);
int moebius(std::uint64_t n);

/// c_q(a) = Σ_{1<=m<=q, (m,q)=1} e(am/q) via μ(q/g)·φ(q)/φ(q/g), g = gcd(a, q).
double ramanujan_sum(std::uint64_t q, std::int64_t a);

/// Σ_{0<=m<q, gcd(m_modulus·m + 1, q) = 1} e(-am/q), summed directly. Requires gcd(a, q) = 1.
std::complex<double> restricted_exp_sum(std::uint64_t q, std::int64_t a, std::uint64_t m_modulus);

}  // namespace schurlab
