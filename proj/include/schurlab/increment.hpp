#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "schurlab/prime_core.hpp"
#include "schurlab/sets.hpp"

namespace schurlab {

/// start, start + step, ..., start + (length - 1) * step.
struct Progression {
  std::int64_t start = 1;
  std::int64_t step = 1;
  std::int64_t length = 0;

  static Progression interval(std::int64_t N) { return {1, 1, N}; }

  std::int64_t at(std::int64_t i) const { return start + i * step; }
  std::int64_t last() const { return start + (length - 1) * step; }
  bool contains(std::int64_t x) const;

  friend bool operator==(const Progression&, const Progression&) = default;
};

/// |S ∩ P|.
std::int64_t count_in(std::span<const std::int64_t> set, const Progression& p);
bool is_subset_of(std::span<const std::int64_t> set, const Progression& p);

/// Tunables of the increment dichotomy. Its absolute constants have no canonical values;
/// these only steer how hard the search works, every outcome is recounted anyway.
struct IterationParams {
  double c = 1.0 / 8;    ///< N' = floor(c α N)
  double c1 = 1.0 / 32;  ///< required density gain factor (1 + c1)
  std::int64_t q1 = 0;       ///< largest increment step; 0 selects min(ceil(α^-3), N)
  std::int64_t min_len = 0;  ///< shortest increment; 0 selects ceil(1 / (c α (1 + c1)))
};

enum class OutcomeKind { Increment, ShiftedPrimes };

struct IterationCertificate {
  double alpha = 0.0;
  std::int64_t n_prime = 0;
  double f_hat_zero = 0.0;      ///< F^_{N',d̄d}(0)
  double inner_product = 0.0;   ///< ⟨1_A * 1_{-A}, F_{N',d̄d}⟩
  double threshold = 0.0;       ///< α² N F^(0) / 2
  // Increment branch.
  std::int64_t q1 = 0;
  std::int64_t min_len = 0;
  double target_density = 0.0;
  double achieved_density = 0.0;
  std::int64_t hits = 0;        ///< |A ∩ P|
  // Shifted-prime branch.
  std::int64_t shifted_count = 0;
  double count_threshold = 0.0;  ///< c1 α N' / (d̄ log N'), logged only
  double count_ratio = 0.0;
};

struct IterationOutcome {
  OutcomeKind kind = OutcomeKind::ShiftedPrimes;
  Progression progression;       ///< Increment: the denser progression inside [1, N]
  IntSet shifted_primes;         ///< ShiftedPrimes: {n in (A-A) ∩ [1, N'] : d̄dn + 1 prime}
  std::int64_t n_prime = 0;
  IterationCertificate cert;
};

/// α^-1 |A|^-1 Σ_{q<=Q1} φ(q)^-1 ∫_{M*_q} |(1_A - α 1_[N])^(θ)|² dθ, arcs taken at width Q.
double energy_condition(std::span<const std::int64_t> A, std::int64_t N, std::int64_t Q1, std::int64_t Q,
                        int samples_per_arc);

/// Exhaustive search over progressions inside [1, N] with step <= Q1 and
/// min_len <= length <= 2 min_len - 1 (a densest window always exists in that range).
/// Returns a densest one if its density reaches target_density; ties go to the smallest
/// step, then the smallest start, then the longest window.
std::optional<Progression> find_increment(std::span<const std::int64_t> A, std::int64_t N, std::int64_t Q1,
                                          std::int64_t min_len, double target_density);

/// One round of the increment dichotomy for A ⊆ [1, N] with modulus d̄d. Throws
/// DegenerateInput when N' = 0 and CertificateFailure when neither branch certifies.
IterationOutcome iteration_step(std::span<const std::int64_t> A, std::int64_t N, std::int64_t d,
                                const ExceptionalContext& ctx, const IterationParams& params,
                                const PrimeTable& table);

struct StepRecord {
  int k = 0;
  std::int64_t N = 0;
  double alpha = 0.0;
  std::int64_t d = 1;             ///< d_k (the ambient step is d̄ d_k)
  Progression ambient;            ///< level-k window in original integers
  OutcomeKind kind = OutcomeKind::ShiftedPrimes;
  IterationCertificate cert;
  Progression increment;          ///< in level-k coordinates, when kind == Increment
};

struct PrimeLocation {
  /// Normalised differences n; the original difference is progression.step * n.
  IntSet a_prime;
  /// {step, 2 step, ..., N' step} with step = d̄ d_{k0}.
  Progression progression;
  int steps = 0;
  int step_cap = 0;
  std::vector<StepRecord> log;

  IntSet original_differences() const;
};

/// Runs the dichotomy until shifted primes appear, zooming into each increment. A lives in
/// `ambient`, whose step must equal d̄ d. Every returned difference is recounted in A - A.
PrimeLocation iterate_to_primes(std::span<const std::int64_t> A, const Progression& ambient, std::int64_t d,
                                const ExceptionalContext& ctx, const IterationParams& params,
                                const PrimeTable& table);

struct TranslateResult {
  std::int64_t n = 0;
  std::int64_t size = 0;   ///< |(n + Y) ∩ X|
  double bound = 0.0;      ///< |X||Y| / (N + d'N')
  std::int64_t d_prime = 1;
};

/// The translate n maximising |(n + Y) ∩ X| (smallest n on ties). X lies in xprog,
/// Y in yprog, and yprog.step must be a multiple of xprog.step.
TranslateResult best_translate(std::span<const std::int64_t> X, const Progression& xprog,
                               std::span<const std::int64_t> Y, const Progression& yprog);

/// A progression of step d d̄ and length >= floor(αN / d̄) on which A keeps half its density.
Progression refine_to_modulus(std::span<const std::int64_t> A, const Progression& ambient, std::int64_t dbar);

std::string to_string(OutcomeKind kind);

}  // namespace schurlab
