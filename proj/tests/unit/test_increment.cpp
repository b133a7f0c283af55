#include <doctest.h>

#include <cmath>
#include <random>

#include "schurlab/errors.hpp"
#include "schurlab/increment.hpp"

using namespace schurlab;

namespace {

IntSet range(std::int64_t lo, std::int64_t hi, std::int64_t step = 1) {
  IntSet out;
  for (std::int64_t x = lo; x <= hi; x += step) out.push_back(x);
  return out;
}

bool in_difference_set(const IntSet& A, std::int64_t n) {
  for (const auto a : A) {
    if (contains(A, a + n)) return true;
  }
  return false;
}

// 18 of the 20 terms 5, 8, ..., 62 together with two far-away points: density 0.1 in [1, 200].
IntSet planted() {
  IntSet A;
  for (int i = 0; i < 20; ++i) {
    if (i != 7 && i != 13) A.push_back(5 + 3 * i);
  }
  A.push_back(120);
  A.push_back(180);
  return A;
}

// Densest window by brute force, same tie-break order.
std::optional<Progression> brute_increment(const IntSet& A, std::int64_t N, std::int64_t Q1, std::int64_t L,
                                           double target) {
  std::optional<Progression> best;
  std::int64_t best_hits = -1, best_len = 1;
  for (std::int64_t q = 1; q <= Q1; ++q) {
    for (std::int64_t s = 1; s <= N; ++s) {
      for (std::int64_t len = L; len <= 2 * L - 1 && s + (len - 1) * q <= N; ++len) {
        const Progression p{s, q, len};
        const std::int64_t h = count_in(A, p);
        // Scan order is step, start, length ascending, so an equal density only wins by length.
        const bool denser = best_hits < 0 || h * best_len > best_hits * len;
        const bool longer = !denser && h * best_len == best_hits * len && best->step == q && best->start == s;
        if (denser || longer) {
          best = p;
          best_hits = h;
          best_len = len;
        }
      }
    }
  }
  if (!best || static_cast<double>(best_hits) < target * static_cast<double>(best_len)) return std::nullopt;
  return best;
}

}  // namespace

TEST_CASE("progression membership") {
  const Progression p{4, 3, 5};  // 4 7 10 13 16
  CHECK(p.contains(4));
  CHECK(p.contains(16));
  CHECK_FALSE(p.contains(19));
  CHECK_FALSE(p.contains(1));
  CHECK_FALSE(p.contains(5));
  CHECK(p.last() == 16);
  CHECK(count_in(IntSet{1, 4, 5, 13, 19}, p) == 2);
  CHECK_FALSE(Progression{1, 1, 0}.contains(1));
}

TEST_CASE("find_increment examples") {
  const auto m5 = find_increment(range(5, 100, 5), 100, 5, 10, 0.9);
  REQUIRE(m5);
  CHECK(m5->step == 5);
  CHECK(count_in(range(5, 100, 5), *m5) == m5->length);

  const auto full = find_increment(range(1, 50), 50, 7, 5, 1.0);
  REQUIRE(full);
  CHECK(full->step == 1);
  CHECK(full->start == 1);

  CHECK_FALSE(find_increment(IntSet{}, 50, 3, 5, 0.1));
  CHECK_FALSE(find_increment(range(1, 50, 2), 50, 1, 5, 0.9));
}

TEST_CASE("find_increment equals brute force") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const std::int64_t N = 20 + static_cast<std::int64_t>(rng() % 60);
    IntSet A;
    for (std::int64_t x = 1; x <= N; ++x) {
      if (rng() % 3 == 0) A.push_back(x);
    }
    const std::int64_t Q1 = 1 + static_cast<std::int64_t>(rng() % 6);
    const std::int64_t L = 2 + static_cast<std::int64_t>(rng() % 6);
    const double target = 0.2 + 0.1 * static_cast<double>(rng() % 6);
    const auto fast = find_increment(A, N, Q1, L, target);
    const auto slow = brute_increment(A, N, Q1, L, target);
    REQUIRE(fast.has_value() == slow.has_value());
    if (fast) {
      INFO("fast ", fast->start, " ", fast->step, " ", fast->length, " hits ", count_in(A, *fast));
      INFO("slow ", slow->start, " ", slow->step, " ", slow->length, " hits ", count_in(A, *slow));
      CHECK(*fast == *slow);
    }
  }
}

TEST_CASE("energy condition") {
  CHECK(energy_condition(range(1, 64), 64, 2, 8, 33) == doctest::Approx(0.0).scale(1));
  const double odd = energy_condition(range(1, 1024, 2), 1024, 2, 64, 65);
  CHECK(odd > 0.0);
  CHECK_THROWS_AS(energy_condition(IntSet{}, 10, 1, 1, 5), DomainError);
  std::mt19937_64 rng(2);
  IntSet A;
  for (std::int64_t x = 1; x <= 300; ++x) {
    if (rng() % 4 == 0) A.push_back(x);
  }
  CHECK(energy_condition(A, 300, 3, 17, 33) >= 0.0);
}

TEST_CASE("iteration step on a full interval") {
  const PrimeTable t(20002);
  const auto out = iteration_step(range(1, 10000), 10000, 1, {}, {}, t);
  CHECK(out.kind == OutcomeKind::ShiftedPrimes);
  CHECK(out.n_prime == 1250);
  // {n <= 1250 : n + 1 prime} = {p - 1 : p <= 1251}, which includes n = 1.
  CHECK(out.shifted_primes.size() == t.prime_count(1251));
  CHECK(out.shifted_primes.size() == 204);
  CHECK(out.shifted_primes.front() == 1);
}

TEST_CASE("iteration step certificates recount") {
  const PrimeTable t(20002);
  const IntSet A = range(7, 10000, 7);
  const auto out = iteration_step(A, 10000, 1, {}, {}, t);
  if (out.kind == OutcomeKind::ShiftedPrimes) {
    for (const auto n : out.shifted_primes) {
      CHECK(n % 7 == 0);
      CHECK(n <= out.n_prime);
      CHECK(t.is_prime(static_cast<std::uint64_t>(n) + 1));
      CHECK(in_difference_set(A, n));
    }
    CHECK(out.cert.inner_product >= out.cert.threshold);
  } else {
    CHECK(static_cast<double>(count_in(A, out.progression)) >=
          out.cert.target_density * static_cast<double>(out.progression.length));
  }
  CHECK_THROWS_AS(iteration_step(IntSet{1}, 4, 1, {}, {}, t), DegenerateInput);
  CHECK_THROWS_AS(iteration_step(IntSet{}, 4, 1, {}, {}, t), DomainError);
}

TEST_CASE("planted progression triggers an increment onto step 3") {
  const PrimeTable t(1000);
  const IntSet A = planted();
  REQUIRE(A.size() == 20);
  IterationParams params;
  params.min_len = 16;
  const auto first = iteration_step(A, 200, 1, {}, params, t);
  REQUIRE(first.kind == OutcomeKind::Increment);
  CHECK(first.progression.step == 3);
  CHECK(static_cast<double>(count_in(A, first.progression)) >= 0.1 * (1 + params.c1) * first.progression.length);

  const auto loc = iterate_to_primes(A, Progression::interval(200), 1, {}, params, t);
  REQUIRE(loc.steps >= 2);
  CHECK(loc.log.front().kind == OutcomeKind::Increment);
  CHECK(loc.progression.step % 3 == 0);
  CHECK(loc.steps <= loc.step_cap);
  for (const auto z : loc.original_differences()) {
    CHECK(in_difference_set(A, z));
    CHECK(t.is_prime(static_cast<std::uint64_t>(z) + 1));
  }
}

TEST_CASE("iterate to primes on evens and on an interval") {
  const PrimeTable t(2 * 16384 + 2);
  const auto one = iterate_to_primes(range(1, 10000), Progression::interval(10000), 1, {}, {}, t);
  CHECK(one.steps == 1);

  const IntSet evens = range(2, 16384, 2);
  const auto loc = iterate_to_primes(evens, Progression::interval(16384), 1, {}, {}, t);
  const IterationParams p;
  CHECK(loc.step_cap == static_cast<int>(std::ceil(std::log(2.0) / std::log(1 + p.c1))) + 1);
  CHECK(loc.steps <= loc.step_cap);
  CHECK_FALSE(loc.a_prime.empty());
  for (const auto z : loc.original_differences()) {
    CHECK(in_difference_set(evens, z));
    CHECK(t.is_prime(static_cast<std::uint64_t>(z) + 1));
  }
}

TEST_CASE("iterate to primes inside a progression with an exceptional modulus") {
  const PrimeTable t(100000);
  // A inside 3 + 6Z, step d̄ d = 3 * 2.
  IntSet A;
  for (std::int64_t i = 0; i < 2000; i += 2) A.push_back(3 + 6 * i);
  const Progression ambient{3, 6, 2000};
  const auto loc = iterate_to_primes(A, ambient, 2, ExceptionalContext::exceptional(3), {}, t);
  CHECK(loc.progression.step % 6 == 0);
  for (const auto z : loc.original_differences()) {
    CHECK(in_difference_set(A, z));
    CHECK(t.is_prime(static_cast<std::uint64_t>(z) + 1));
  }
  CHECK_THROWS_AS(iterate_to_primes(A, ambient, 3, ExceptionalContext::exceptional(3), {}, t), DomainError);
}

TEST_CASE("best translate examples") {
  const auto full = best_translate(range(1, 30), Progression::interval(30), range(1, 30), Progression::interval(30));
  CHECK(full.n == 0);
  CHECK(full.size == 30);

  const auto odd = best_translate(range(1, 7, 2), Progression{1, 1, 8}, IntSet{0, 2}, Progression{0, 2, 2});
  CHECK(odd.n == 1);
  CHECK(odd.size == 2);
  CHECK(odd.bound == doctest::Approx(8.0 / 12.0));

  const auto single = best_translate(IntSet{17}, Progression{17, 1, 1}, IntSet{5}, Progression{5, 1, 1});
  CHECK(single.n == 12);
  CHECK(single.size == 1);

  CHECK_THROWS_AS(best_translate(IntSet{}, Progression{1, 1, 1}, IntSet{1}, Progression{1, 1, 1}), DomainError);
  CHECK_THROWS_AS(best_translate(IntSet{1}, Progression{1, 2, 1}, IntSet{1}, Progression{1, 3, 1}), DomainError);
}

TEST_CASE("refine to modulus") {
  const auto same = refine_to_modulus(range(1, 100), Progression::interval(100), 1);
  CHECK(same.step == 1);
  CHECK(same.length >= 100);

  const auto P = refine_to_modulus(range(1, 100), Progression::interval(100), 3);
  CHECK(P.step == 3);
  CHECK(P.length >= 33);
  CHECK(2 * count_in(range(1, 100), P) >= P.length);

  const PrimeTable t(10001);
  IntSet shifted;
  for (const auto p : t.primes()) shifted.push_back(static_cast<std::int64_t>(p) - 1);
  const auto Q = refine_to_modulus(shifted, Progression::interval(10000), 4);
  const double alpha = static_cast<double>(shifted.size()) / 10000.0;
  CHECK(Q.step == 4);
  CHECK(Q.length >= static_cast<std::int64_t>(alpha * 10000 / 4));
  CHECK(static_cast<double>(count_in(shifted, Q)) >= alpha * static_cast<double>(Q.length) / 2);

  CHECK_THROWS_AS(refine_to_modulus(IntSet{1, 2}, Progression::interval(100), 5), DegenerateInput);
}
