#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "schurlab/increment.hpp"
#include "schurlab/prime_core.hpp"
#include "schurlab/sets.hpp"

namespace schurlab {

/// Total colouring of the primes <= N0 by colours 1..k.
struct Colouring {
  std::int64_t N0 = 0;
  int k = 1;
  std::vector<std::int64_t> primes;  ///< ascending
  std::vector<int> colours;          ///< colours[i] belongs to primes[i]

  /// 0 when p is not a prime <= N0.
  int colour_of(std::int64_t p) const;

  /// Throws DomainError unless k >= 1, primes are exactly the primes <= N0 and every colour is in [1, k].
  void validate(const PrimeTable& table) const;

  static Colouring uniform(std::int64_t N0, int k, int colour, const PrimeTable& table);
  /// Colour 1 + (rank of p mod m) mod k. The residues coprime to m come first in increasing
  /// order, then the primes dividing m (the only other classes that hold a prime).
  static Colouring residue(std::int64_t N0, int k, std::int64_t modulus, const PrimeTable& table);
  static Colouring random(std::int64_t N0, int k, std::uint64_t seed, const PrimeTable& table);
};

struct SolutionWitness {
  std::int64_t p1 = 0;
  std::int64_t p2 = 0;
  std::int64_t p3 = 0;
  int colour = 0;

  friend bool operator==(const SolutionWitness&, const SolutionWitness&) = default;
};

/// p1 - p2 = p3 - 1, all three prime, <= N0 and of the same colour.
bool is_valid_witness(const Colouring& c, const SolutionWitness& w, const PrimeTable& table);

/// {p - 1 : p <= N0 prime of the given colour}.
IntSet induced_shifted_set(const Colouring& c, int colour);

/// First colour with a solution; inside it the smallest p1, then the smallest p3.
std::optional<SolutionWitness> find_mono_solution(const Colouring& c);

// Sum-free colouring search ------------------------------------------------------------

enum class SearchStatus { Forced, Avoidable, Indeterminate };

enum class ValueOrder { Ascending, Descending, Random };
enum class BranchOrder { Forward, Reverse };

struct SearchOptions {
  std::uint64_t budget = 50'000'000;  ///< nodes, shared evenly among top-level branches
  ValueOrder value_order = ValueOrder::Ascending;
  BranchOrder branch_order = BranchOrder::Forward;
  std::uint64_t seed = 0;             ///< used by ValueOrder::Random
};

struct SearchResult {
  SearchStatus status = SearchStatus::Indeterminate;
  std::vector<int> colours;  ///< an avoiding colouring of the elements when Avoidable
  std::uint64_t nodes = 0;
};

/// Decides whether the positive integers `elements` (ascending, distinct) admit a
/// k-colouring with no monochromatic x + y = z (x = y allowed). Elements are coloured in
/// increasing order; the first gets colour 1 and new colours are introduced in order.
SearchResult sum_free_search(const std::vector<std::int64_t>& elements, int k, const SearchOptions& options = {});

/// Enumerates all k^n colourings. Tests only; n must be small.
SearchStatus sum_free_enumerate(const std::vector<std::int64_t>& elements, int k);

/// True iff no colour class of `colours` contains x, y, z with x + y = z.
bool is_sum_free_colouring(const std::vector<std::int64_t>& elements, const std::vector<int>& colours);

struct RpCheck {
  SearchStatus status = SearchStatus::Indeterminate;
  std::optional<Colouring> avoiding;
  std::uint64_t nodes = 0;
};

/// Is every k-colouring of the primes <= N forced to contain a monochromatic solution?
RpCheck verify_rp(int k, std::int64_t N, const PrimeTable& table, const SearchOptions& options = {});

struct ThresholdResult {
  std::optional<std::int64_t> value;  ///< exact threshold
  std::int64_t lower_bound = 0;       ///< largest N with a certified avoiding colouring
  std::vector<std::int64_t> elements;  ///< the certificate: elements below lower_bound ...
  std::vector<int> colours;            ///< ... and their avoiding colours
  bool budget_exhausted = false;
  std::uint64_t nodes = 0;
};

/// Smallest N <= N_max at which every k-colouring of the primes <= N is forced.
ThresholdResult rp_threshold(int k, std::int64_t N_max, const PrimeTable& table, const SearchOptions& options = {});

/// Same question over [1, N] with x + y = z.
ThresholdResult schur_oracle(int k, std::int64_t n_max, const SearchOptions& options = {});

/// Randomised restarts hunting for an avoiding colouring of `elements`.
std::optional<std::vector<int>> random_restart_hunt(const std::vector<std::int64_t>& elements, int k,
                                                    int restarts, std::uint64_t budget_per_restart,
                                                    std::uint64_t seed);

// Bootstrap ----------------------------------------------------------------------------

struct BootstrapParams {
  /// c = 1/2 here: with the iteration default 1/8, N' = floor(c α N) collapses to a handful
  /// of differences once A has shrunk, and the next step has nothing to work with.
  IterationParams iteration{1.0 / 2};
  /// dbar_schedule[i] > 1 injects that modulus before step i.
  std::vector<std::int64_t> dbar_schedule;
  int max_steps = 64;
};

struct BootstrapState {
  Progression ambient;
  std::int64_t d = 1;
  std::int64_t dbar = 1;
  std::vector<int> allowed;  ///< colours still available, ascending
  int colour = 0;            ///< colour shared by the current set
};

struct PigeonholeCertificate {
  IntSet located_set;                 ///< A', the shifted primes found in A - A
  IntSet next_set;                    ///< A''
  std::int64_t located = 0;           ///< |A'|
  std::vector<std::int64_t> class_sizes;  ///< |A' ∩ colour c| for every colour 1..k
  int chosen_colour = 0;
  std::int64_t chosen_size = 0;
  double pigeonhole_bound = 0.0;      ///< |A'| / (colours_remaining - 1)
  TranslateResult translate;
  std::int64_t next_size = 0;
  double next_bound = 0.0;            ///< translate bound carried to A''
};

struct BootstrapStepRecord {
  int i = 0;
  std::int64_t N = 0;
  std::int64_t size = 0;
  double alpha = 0.0;
  std::int64_t d = 1;
  std::int64_t dbar = 1;
  int colour = 0;
  int colours_remaining = 0;
  Progression ambient;
  std::string outcome;  ///< "witness" or "shrink"
  std::optional<SolutionWitness> witness;
  std::optional<Progression> refined;  ///< set when a modulus was injected
  std::vector<StepRecord> iteration;
  std::optional<PigeonholeCertificate> pigeonhole;
};

struct BootstrapStepResult {
  BootstrapStepRecord record;
  std::optional<SolutionWitness> witness;
  IntSet next;
  BootstrapState next_state;
};

/// One pass of the colour-shrinking lemma on a monochromatic A ⊆ P - 1.
BootstrapStepResult bootstrap_step(const Colouring& c, const IntSet& A, const BootstrapState& state,
                                   const BootstrapParams& params, const PrimeTable& table);

struct BootstrapTrace {
  std::int64_t N0 = 0;
  int k = 0;
  std::int64_t initial_size = 0;
  int initial_colour = 0;
  double alpha0 = 0.0;
  double alpha0_reference = 0.0;  ///< (2 k log N0)^-1
  double regime_value = 0.0;      ///< log log log N0, NaN when undefined
  bool outside_regime = false;    ///< k > log log log N0
  std::vector<BootstrapStepRecord> steps;
  std::optional<SolutionWitness> witness;
  std::string terminal;  ///< "witness", "exhaustion" or "error"
  std::string message;
};

/// Needs table.limit() >= N0 + 1.
BootstrapTrace bootstrap_run(const Colouring& c, const BootstrapParams& params, const PrimeTable& table);

std::string to_string(SearchStatus status);

}  // namespace schurlab
