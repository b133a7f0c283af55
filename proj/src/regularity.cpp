#include "schurlab/regularity.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "schurlab/errors.hpp"
#include "schurlab/spectral.hpp"

namespace schurlab {
namespace {

std::vector<std::int64_t> primes_up_to(std::int64_t N0, const PrimeTable& table) {
  if (N0 > 0 && static_cast<std::uint64_t>(N0) > table.limit()) {
    throw RangeError("colouring: prime table does not reach " + std::to_string(N0));
  }
  std::vector<std::int64_t> out;
  for (const auto p : table.primes()) {
    if (static_cast<std::int64_t>(p) > N0) break;
    out.push_back(p);
  }
  return out;
}

bool trial_prime(std::int64_t n) {
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) return false;
  }
  return true;
}

void check_k(int k) {
  if (k < 1) throw DomainError("colouring: k must be at least 1");
}

}  // namespace

int Colouring::colour_of(std::int64_t p) const {
  const auto it = std::lower_bound(primes.begin(), primes.end(), p);
  if (it == primes.end() || *it != p) return 0;
  return colours[static_cast<std::size_t>(it - primes.begin())];
}

void Colouring::validate(const PrimeTable& table) const {
  check_k(k);
  if (primes != primes_up_to(N0, table)) throw DomainError("colouring: primes must be exactly the primes <= N0");
  if (colours.size() != primes.size()) throw DomainError("colouring: one colour per prime required");
  for (const int c : colours) {
    if (c < 1 || c > k) throw DomainError("colouring: colour " + std::to_string(c) + " outside [1, k]");
  }
}

Colouring Colouring::uniform(std::int64_t N0, int k, int colour, const PrimeTable& table) {
  check_k(k);
  if (colour < 1 || colour > k) throw DomainError("colouring: colour outside [1, k]");
  Colouring c{N0, k, primes_up_to(N0, table), {}};
  c.colours.assign(c.primes.size(), colour);
  return c;
}

Colouring Colouring::residue(std::int64_t N0, int k, std::int64_t modulus, const PrimeTable& table) {
  check_k(k);
  if (modulus < 1) throw DomainError("colouring: modulus must be positive");
  std::vector<std::int64_t> order;
  for (std::int64_t r = 0; r < modulus; ++r) {
    if (std::gcd(r, modulus) == 1) order.push_back(r);
  }
  // A class sharing a factor with m holds at most one prime: r itself, or m when r = 0.
  auto prime = [&](std::int64_t n) { return n >= 2 && trial_prime(n); };
  for (std::int64_t r = 0; r < modulus; ++r) {
    if (std::gcd(r, modulus) != 1 && prime(r == 0 ? modulus : r)) order.push_back(r);
  }
  std::vector<int> rank(static_cast<std::size_t>(modulus));
  for (std::size_t i = 0; i < order.size(); ++i) rank[static_cast<std::size_t>(order[i])] = static_cast<int>(i);

  Colouring c{N0, k, primes_up_to(N0, table), {}};
  for (const auto p : c.primes) c.colours.push_back(1 + rank[static_cast<std::size_t>(p % modulus)] % k);
  return c;
}

Colouring Colouring::random(std::int64_t N0, int k, std::uint64_t seed, const PrimeTable& table) {
  check_k(k);
  Colouring c{N0, k, primes_up_to(N0, table), {}};
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < c.primes.size(); ++i) c.colours.push_back(1 + static_cast<int>(rng() % static_cast<std::uint64_t>(k)));
  return c;
}

bool is_valid_witness(const Colouring& c, const SolutionWitness& w, const PrimeTable& table) {
  for (const auto p : {w.p1, w.p2, w.p3}) {
    if (p < 2 || p > c.N0 || !table.is_prime(static_cast<std::uint64_t>(p))) return false;
    if (c.colour_of(p) != w.colour) return false;
  }
  return w.p1 - w.p2 == w.p3 - 1;
}

IntSet induced_shifted_set(const Colouring& c, int colour) {
  if (colour < 1 || colour > c.k) throw DomainError("induced_shifted_set: colour outside [1, k]");
  IntSet out;
  for (std::size_t i = 0; i < c.primes.size(); ++i) {
    if (c.colours[i] == colour) out.push_back(c.primes[i] - 1);
  }
  return out;
}

std::optional<SolutionWitness> find_mono_solution(const Colouring& c) {
  for (int colour = 1; colour <= c.k; ++colour) {
    const IntSet B = induced_shifted_set(c, colour);
    if (count_schur_triples(B) == 0) continue;
    for (const auto x : B) {
      for (const auto z : B) {
        if (z >= x) break;
        if (contains(B, x - z)) return SolutionWitness{x + 1, x - z + 1, z + 1, colour};
      }
    }
    throw InvariantViolation("find_mono_solution: triple count is positive but the scan found nothing");
  }
  return std::nullopt;
}

}  // namespace schurlab
