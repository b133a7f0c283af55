#include "schurlab/increment.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "schurlab/arcs.hpp"
#include "schurlab/errors.hpp"
#include "schurlab/parallel.hpp"
#include "schurlab/spectral.hpp"

namespace schurlab {
namespace {

void require_in_window(std::span<const std::int64_t> A, std::int64_t N, const char* who) {
  if (!A.empty() && (A.front() < 1 || A.back() > N)) {
    throw DomainError(std::string(who) + ": set must lie in [1, " + std::to_string(N) + "]");
  }
  if (!std::is_sorted(A.begin(), A.end()) || std::adjacent_find(A.begin(), A.end()) != A.end()) {
    throw DomainError(std::string(who) + ": set must be sorted without repeats");
  }
}

struct Candidate {
  std::int64_t hits = -1;
  std::int64_t length = 1;
  std::int64_t step = 0;
  std::int64_t start = 0;

  // Denser first, then smaller step, smaller start, longer window.
  bool better_than(const Candidate& o) const {
    if (o.hits < 0) return hits >= 0;
    const auto lhs = hits * o.length;
    const auto rhs = o.hits * length;
    if (lhs != rhs) return lhs > rhs;
    if (step != o.step) return step < o.step;
    if (start != o.start) return start < o.start;
    return length > o.length;
  }
};

Candidate best_for_step(const std::vector<char>& member, std::int64_t N, std::int64_t q, std::int64_t L) {
  Candidate best;
  std::vector<std::int64_t> prefix;
  for (std::int64_t r = 1; r <= q && r <= N; ++r) {
    const std::int64_t n = (N - r) / q + 1;
    if (n < L) continue;
    prefix.assign(static_cast<std::size_t>(n) + 1, 0);
    for (std::int64_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + member[static_cast<std::size_t>(r + i * q)];
    for (std::int64_t i = 0; i + L <= n; ++i) {
      const std::int64_t max_len = std::min(2 * L - 1, n - i);
      // Any window from i of length >= L holds at most prefix[i + max_len] - prefix[i] points.
      const Candidate ceiling{prefix[i + max_len] - prefix[i], L, q, r + i * q};
      if (best.hits >= 0 && best.better_than(ceiling)) continue;
      for (std::int64_t len = L; len <= max_len; ++len) {
        const Candidate c{prefix[i + len] - prefix[i], len, q, r + i * q};
        if (c.better_than(best)) best = c;
      }
    }
  }
  return best;
}

IntSet normalise(std::span<const std::int64_t> A, const Progression& p) {
  IntSet out;
  out.reserve(A.size());
  for (const auto x : A) out.push_back((x - p.start) / p.step + 1);
  return out;
}

}  // namespace

bool Progression::contains(std::int64_t x) const {
  if (length <= 0) return false;
  const std::int64_t off = x - start;
  if (off < 0 || off % step != 0) return false;
  return off / step < length;
}

std::int64_t count_in(std::span<const std::int64_t> set, const Progression& p) {
  return static_cast<std::int64_t>(std::count_if(set.begin(), set.end(), [&](std::int64_t x) { return p.contains(x); }));
}

bool is_subset_of(std::span<const std::int64_t> set, const Progression& p) {
  return std::all_of(set.begin(), set.end(), [&](std::int64_t x) { return p.contains(x); });
}

std::string to_string(OutcomeKind kind) { return kind == OutcomeKind::Increment ? "increment" : "shifted_primes"; }

IntSet PrimeLocation::original_differences() const {
  IntSet out;
  out.reserve(a_prime.size());
  for (const auto n : a_prime) out.push_back(n * progression.step);
  return out;
}

double energy_condition(std::span<const std::int64_t> A, std::int64_t N, std::int64_t Q1, std::int64_t Q,
                        int samples_per_arc) {
  if (A.empty()) throw DomainError("energy_condition: A is empty, the density normalisation is undefined");
  require_in_window(A, N, "energy_condition");
  if (Q1 < 1 || Q < Q1) throw DomainError("energy_condition: requires Q >= Q1 >= 1");

  const double alpha = static_cast<double>(A.size()) / static_cast<double>(N);
  std::vector<double> balanced(static_cast<std::size_t>(N), -alpha);
  for (const auto x : A) balanced[static_cast<std::size_t>(x - 1)] += 1.0;
  const FiniteSignal f = FiniteSignal::from_real(1, balanced);

  const ArcDecomposition decomp(Q, Q1);
  double sum = 0.0;
  for (std::int64_t q = 1; q <= Q1; ++q) {
    sum += arc_energy(f, q, decomp, samples_per_arc) / static_cast<double>(euler_phi(static_cast<std::uint64_t>(q)));
  }
  return sum / (alpha * static_cast<double>(A.size()));
}

std::optional<Progression> find_increment(std::span<const std::int64_t> A, std::int64_t N, std::int64_t Q1,
                                          std::int64_t min_len, double target_density) {
  require_in_window(A, N, "find_increment");
  if (A.empty() || N < 1 || Q1 < 1) return std::nullopt;
  const std::int64_t L = std::max<std::int64_t>(min_len, 1);
  if (L > N) return std::nullopt;

  std::vector<char> member(static_cast<std::size_t>(N) + 1, 0);
  for (const auto x : A) member[static_cast<std::size_t>(x)] = 1;

  // Steps whose residue classes are all shorter than L cannot host a window.
  const std::int64_t max_step = std::min(Q1, std::max<std::int64_t>(1, (N - 1) / std::max<std::int64_t>(L - 1, 1)));
  std::vector<Candidate> per_step(static_cast<std::size_t>(max_step));
  parallel_for(per_step.size(), [&](std::size_t i) {
    per_step[i] = best_for_step(member, N, static_cast<std::int64_t>(i) + 1, L);
  });

  Candidate best;
  for (const auto& c : per_step) {
    if (c.hits >= 0 && c.better_than(best)) best = c;
  }
  if (best.hits < 0) return std::nullopt;
  if (static_cast<double>(best.hits) < target_density * static_cast<double>(best.length)) return std::nullopt;
  return Progression{best.start, best.step, best.length};
}

IterationOutcome iteration_step(std::span<const std::int64_t> A, std::int64_t N, std::int64_t d,
                                const ExceptionalContext& ctx, const IterationParams& params,
                                const PrimeTable& table) {
  ctx.validate();
  if (A.empty()) throw DomainError("iteration_step: A is empty");
  require_in_window(A, N, "iteration_step");
  if (d < 1) throw DomainError("iteration_step: d must be positive");

  IterationOutcome out;
  auto& cert = out.cert;
  cert.alpha = static_cast<double>(A.size()) / static_cast<double>(N);
  out.n_prime = cert.n_prime = static_cast<std::int64_t>(std::floor(params.c * cert.alpha * static_cast<double>(N)));
  if (out.n_prime < 1) {
    throw DegenerateInput("iteration_step: N' = floor(c alpha N) = 0 for |A| = " + std::to_string(A.size()) +
                          ", N = " + std::to_string(N));
  }

  const WeightedSequence w = build_weight(static_cast<std::uint64_t>(out.n_prime), static_cast<std::uint64_t>(d), ctx, table);
  cert.f_hat_zero = dft_at(FiniteSignal::from_weight(w), 0.0).real();
  cert.inner_product = inner_product_weighted(A, w);
  cert.threshold = cert.alpha * cert.alpha * static_cast<double>(N) * cert.f_hat_zero / 2;

  if (cert.inner_product >= cert.threshold) {
    out.kind = OutcomeKind::ShiftedPrimes;
    const CountSignal diffs = difference_counts(A);
    for (std::int64_t n = 1; n <= out.n_prime; ++n) {
      if (diffs.at(n) > 0 && table.is_prime(w.d_total * static_cast<std::uint64_t>(n) + 1)) out.shifted_primes.push_back(n);
    }
    for (const auto n : out.shifted_primes) {
      const bool in_difference_set =
          std::any_of(A.begin(), A.end(), [&](std::int64_t a) { return std::binary_search(A.begin(), A.end(), a + n); });
      if (!in_difference_set) {
        throw InvariantViolation("iteration_step: " + std::to_string(n) + " reported in A - A but not found on recount");
      }
    }
    cert.shifted_count = static_cast<std::int64_t>(out.shifted_primes.size());
    if (out.n_prime >= 2) {
      cert.count_threshold = params.c1 * cert.alpha * static_cast<double>(out.n_prime) /
                             (static_cast<double>(ctx.dbar) * std::log(static_cast<double>(out.n_prime)));
      cert.count_ratio = static_cast<double>(cert.shifted_count) / cert.count_threshold;
    }
    return out;
  }

  out.kind = OutcomeKind::Increment;
  const double alpha = cert.alpha;
  cert.q1 = params.q1 > 0 ? params.q1
                          : static_cast<std::int64_t>(std::min(std::ceil(1.0 / (alpha * alpha * alpha)), static_cast<double>(N)));
  cert.min_len = params.min_len > 0 ? params.min_len
                                    : static_cast<std::int64_t>(std::ceil(1.0 / (params.c * alpha * (1 + params.c1))));
  cert.target_density = alpha * (1 + params.c1);
  const auto found = find_increment(A, N, cert.q1, cert.min_len, cert.target_density);
  if (!found) {
    throw CertificateFailure("iteration_step: inner product " + std::to_string(cert.inner_product) +
                             " is below the threshold " + std::to_string(cert.threshold) +
                             " and no progression with step <= " + std::to_string(cert.q1) + ", length >= " +
                             std::to_string(cert.min_len) + " reaches density " + std::to_string(cert.target_density));
  }
  out.progression = *found;
  cert.hits = count_in(A, out.progression);
  cert.achieved_density = static_cast<double>(cert.hits) / static_cast<double>(out.progression.length);
  if (static_cast<double>(cert.hits) < cert.target_density * static_cast<double>(out.progression.length) ||
      out.progression.start < 1 || out.progression.last() > N) {
    throw InvariantViolation("iteration_step: increment progression fails its density recount");
  }
  return out;
}

PrimeLocation iterate_to_primes(std::span<const std::int64_t> A, const Progression& ambient, std::int64_t d,
                                const ExceptionalContext& ctx, const IterationParams& params,
                                const PrimeTable& table) {
  ctx.validate();
  if (A.empty()) throw DomainError("iterate_to_primes: A is empty");
  if (d < 1 || ambient.step != static_cast<std::int64_t>(ctx.dbar) * d) {
    throw DomainError("iterate_to_primes: ambient step " + std::to_string(ambient.step) + " must equal dbar * d");
  }
  if (!is_subset_of(A, ambient)) throw DomainError("iterate_to_primes: A is not contained in its progression");

  PrimeLocation result;
  const double alpha0 = static_cast<double>(A.size()) / static_cast<double>(ambient.length);
  result.step_cap = static_cast<int>(std::ceil(std::log(1.0 / alpha0) / std::log(1.0 + params.c1))) + 1;

  Progression level = ambient;
  IntSet current = normalise(A, level);
  for (int k = 1;; ++k) {
    if (k > result.step_cap) {
      throw InvariantViolation("iterate_to_primes: exceeded the density step cap of " + std::to_string(result.step_cap));
    }
    const std::int64_t d_k = level.step / static_cast<std::int64_t>(ctx.dbar);
    const IterationOutcome outcome = iteration_step(current, level.length, d_k, ctx, params, table);

    StepRecord rec;
    rec.k = k;
    rec.N = level.length;
    rec.alpha = outcome.cert.alpha;
    rec.d = d_k;
    rec.ambient = level;
    rec.kind = outcome.kind;
    rec.cert = outcome.cert;
    result.steps = k;

    if (outcome.kind == OutcomeKind::ShiftedPrimes) {
      result.log.push_back(rec);
      result.a_prime = outcome.shifted_primes;
      result.progression = {level.step, level.step, outcome.n_prime};
      for (const auto diff : result.original_differences()) {
        const bool in_difference_set = std::any_of(
            A.begin(), A.end(), [&](std::int64_t a) { return std::binary_search(A.begin(), A.end(), a + diff); });
        if (!in_difference_set || !table.is_prime(static_cast<std::uint64_t>(diff) + 1)) {
          throw InvariantViolation("iterate_to_primes: difference " + std::to_string(diff) +
                                   " fails the A - A / shifted-prime recount");
        }
      }
      return result;
    }

    rec.increment = outcome.progression;
    result.log.push_back(rec);
    const Progression& p = outcome.progression;
    IntSet next;
    for (const auto x : current) {
      if (p.contains(x)) next.push_back((x - p.start) / p.step + 1);
    }
    level = {level.start + (p.start - 1) * level.step, level.step * p.step, p.length};
    current = std::move(next);
  }
}

TranslateResult best_translate(std::span<const std::int64_t> X, const Progression& xprog,
                               std::span<const std::int64_t> Y, const Progression& yprog) {
  if (X.empty() || Y.empty()) throw DomainError("best_translate: both sets must be nonempty");
  if (xprog.step < 1 || yprog.step % xprog.step != 0) {
    throw DomainError("best_translate: the step of Y's progression must be a multiple of X's");
  }
  if (!is_subset_of(X, xprog) || !is_subset_of(Y, yprog)) {
    throw DomainError("best_translate: sets must lie in their progressions");
  }

  // #{(x, y) : x - y = n} = (1_X * 1_{-Y})(n).
  std::vector<std::int64_t> negated(Y.size());
  std::transform(Y.begin(), Y.end(), negated.begin(), [](std::int64_t y) { return -y; });
  const CountSignal counts = sum_counts(X, make_set(std::move(negated)));
  const auto peak = std::max_element(counts.counts.begin(), counts.counts.end());  // first maximum = smallest n

  TranslateResult r;
  r.n = counts.offset + (peak - counts.counts.begin());
  r.d_prime = yprog.step / xprog.step;
  r.size = static_cast<std::int64_t>(std::count_if(
      Y.begin(), Y.end(), [&](std::int64_t y) { return std::binary_search(X.begin(), X.end(), r.n + y); }));
  r.bound = static_cast<double>(X.size()) * static_cast<double>(Y.size()) /
            static_cast<double>(xprog.length + r.d_prime * yprog.length);
  if (r.size != *peak || static_cast<double>(r.size) < r.bound) {
    throw InvariantViolation("best_translate: recount " + std::to_string(r.size) + " disagrees with the convolution peak or the averaging bound");
  }
  return r;
}

Progression refine_to_modulus(std::span<const std::int64_t> A, const Progression& ambient, std::int64_t dbar) {
  if (A.empty()) throw DomainError("refine_to_modulus: A is empty");
  if (dbar < 1) throw DomainError("refine_to_modulus: dbar must be positive");
  if (!is_subset_of(A, ambient)) throw DomainError("refine_to_modulus: A is not contained in its progression");

  const auto size = static_cast<std::int64_t>(A.size());
  const std::int64_t L = size / dbar;  // floor(αN / d̄)
  if (L < 1) throw DegenerateInput("refine_to_modulus: alpha N / dbar < 1");

  const std::int64_t step = ambient.step * dbar;
  IntSet Y;
  for (std::int64_t n = 0; n <= L; ++n) Y.push_back(step * n);
  const TranslateResult t = best_translate(A, ambient, Y, Progression{0, step, L + 1});

  const Progression P{t.n, step, L + 1};
  const std::int64_t hits = count_in(A, P);
  const double alpha = static_cast<double>(size) / static_cast<double>(ambient.length);
  if (P.length < L || 2 * static_cast<double>(hits) < alpha * static_cast<double>(P.length)) {
    throw InvariantViolation("refine_to_modulus: progression keeps " + std::to_string(hits) + " of " +
                             std::to_string(P.length) + " points, below alpha/2");
  }
  return P;
}

}  // namespace schurlab
