#include <algorithm>
#include <cmath>
#include <limits>

#include "schurlab/errors.hpp"
#include "schurlab/regularity.hpp"

namespace schurlab {
namespace {

// Scans (A - A) ∩ (P - 1) for a difference of A's own colour: smallest x, then smallest z.
std::optional<SolutionWitness> same_colour_difference(const Colouring& c, const IntSet& A, int colour,
                                                      const PrimeTable& table) {
  for (std::size_t i = 0; i < A.size(); ++i) {
    for (std::size_t j = i; j-- > 0;) {
      const std::int64_t z = A[i] - A[j];
      if (table.is_prime(static_cast<std::uint64_t>(z + 1)) && c.colour_of(z + 1) == colour) {
        return SolutionWitness{A[i] + 1, A[j] + 1, z + 1, colour};
      }
    }
  }
  return std::nullopt;
}

bool colour_allowed(const std::vector<int>& allowed, int colour) {
  return std::binary_search(allowed.begin(), allowed.end(), colour);
}

}  // namespace

BootstrapStepResult bootstrap_step(const Colouring& c, const IntSet& A, const BootstrapState& state,
                                   const BootstrapParams& params, const PrimeTable& table) {
  if (A.empty()) throw DomainError("bootstrap_step: A is empty");
  if (!colour_allowed(state.allowed, state.colour)) throw DomainError("bootstrap_step: A's colour is not available");
  for (const auto a : A) {
    if (c.colour_of(a + 1) != state.colour) throw DomainError("bootstrap_step: A is not a monochromatic subset of P - 1");
  }
  if (state.ambient.step != state.d * state.dbar || !is_subset_of(A, state.ambient)) {
    throw DomainError("bootstrap_step: A must lie in a progression of step d dbar");
  }

  BootstrapStepResult out;
  auto& rec = out.record;
  rec.N = state.ambient.length;
  rec.size = static_cast<std::int64_t>(A.size());
  rec.alpha = static_cast<double>(A.size()) / static_cast<double>(state.ambient.length);
  rec.d = state.d;
  rec.dbar = state.dbar;
  rec.colour = state.colour;
  rec.colours_remaining = static_cast<int>(state.allowed.size());
  rec.ambient = state.ambient;

  if (auto w = same_colour_difference(c, A, state.colour, table)) {
    if (!is_valid_witness(c, *w, table)) throw InvariantViolation("bootstrap_step: witness fails its recheck");
    rec.outcome = "witness";
    rec.witness = w;
    out.witness = w;
    return out;
  }
  if (state.allowed.size() <= 1) {
    throw InvariantViolation("bootstrap_step: colour exhaustion, one colour left and (A - A) ∩ (P - 1) avoids it");
  }

  const ExceptionalContext ctx{static_cast<std::uint64_t>(state.dbar), state.dbar != 1};
  const PrimeLocation loc = iterate_to_primes(A, state.ambient, state.d, ctx, params.iteration, table);
  rec.iteration = loc.log;
  const IntSet located = loc.original_differences();

  PigeonholeCertificate cert;
  cert.located_set = located;
  cert.located = static_cast<std::int64_t>(located.size());
  cert.class_sizes.assign(static_cast<std::size_t>(c.k), 0);
  for (const auto z : located) {
    const int colour = c.colour_of(z + 1);
    if (colour == 0 || colour == state.colour || !colour_allowed(state.allowed, colour)) {
      throw InvariantViolation("bootstrap_step: located difference " + std::to_string(z) + " has an excluded colour");
    }
    ++cert.class_sizes[static_cast<std::size_t>(colour - 1)];
  }
  const auto biggest = std::max_element(cert.class_sizes.begin(), cert.class_sizes.end());  // first = smallest colour
  cert.chosen_colour = static_cast<int>(biggest - cert.class_sizes.begin()) + 1;
  cert.chosen_size = *biggest;
  cert.pigeonhole_bound = static_cast<double>(cert.located) / static_cast<double>(state.allowed.size() - 1);
  if (cert.chosen_size == 0) {
    throw DegenerateInput("bootstrap_step: no shifted primes located in A - A (|A| = " + std::to_string(A.size()) +
                          ", N = " + std::to_string(state.ambient.length) + ")");
  }
  if (static_cast<double>(cert.chosen_size) < cert.pigeonhole_bound) {
    throw InvariantViolation("bootstrap_step: largest colour class is below the pigeonhole bound");
  }

  IntSet B;
  for (const auto z : located) {
    if (c.colour_of(z + 1) == cert.chosen_colour) B.push_back(z);
  }
  cert.translate = best_translate(A, state.ambient, B, loc.progression);
  for (const auto b : B) {
    if (contains(A, b + cert.translate.n)) out.next.push_back(b);
  }
  cert.next_set = out.next;
  cert.next_size = static_cast<std::int64_t>(out.next.size());
  cert.next_bound = cert.translate.bound;

  // Post-conditions: containment, size, and the colours of A'' and its differences.
  if (!is_subset_of(out.next, loc.progression) || cert.next_size != cert.translate.size ||
      static_cast<double>(cert.next_size) < cert.next_bound || out.next.empty()) {
    throw InvariantViolation("bootstrap_step: A'' fails its containment or size recount");
  }
  std::vector<int> next_allowed;
  std::copy_if(state.allowed.begin(), state.allowed.end(), std::back_inserter(next_allowed),
               [&](int colour) { return colour != state.colour; });
  for (std::size_t i = 0; i < out.next.size(); ++i) {
    if (!colour_allowed(next_allowed, c.colour_of(out.next[i] + 1))) {
      throw InvariantViolation("bootstrap_step: A'' meets an excluded colour");
    }
    for (std::size_t j = 0; j < i; ++j) {
      const std::int64_t z = out.next[i] - out.next[j];
      if (table.is_prime(static_cast<std::uint64_t>(z + 1)) && !colour_allowed(next_allowed, c.colour_of(z + 1))) {
        throw InvariantViolation("bootstrap_step: A'' - A'' meets an excluded colour");
      }
    }
  }

  rec.outcome = "shrink";
  rec.pigeonhole = cert;
  out.next_state.ambient = loc.progression;
  out.next_state.d = loc.progression.step;
  out.next_state.dbar = 1;
  out.next_state.allowed = std::move(next_allowed);
  out.next_state.colour = cert.chosen_colour;
  return out;
}

BootstrapTrace bootstrap_run(const Colouring& c, const BootstrapParams& params, const PrimeTable& table) {
  if (c.primes.empty()) throw DomainError("bootstrap_run: the colouring covers no primes (N0 = " + std::to_string(c.N0) + ")");
  if (static_cast<std::uint64_t>(c.N0) + 1 > table.limit()) {
    throw RangeError("bootstrap_run: prime table must reach N0 + 1");
  }
  c.validate(table);

  BootstrapTrace trace;
  trace.N0 = c.N0;
  trace.k = c.k;
  const double log_n0 = std::log(static_cast<double>(c.N0));
  trace.alpha0_reference = 1.0 / (2.0 * c.k * log_n0);
  trace.regime_value = log_n0 > 1 && std::log(log_n0) > 0 ? std::log(std::log(log_n0))
                                                            : std::numeric_limits<double>::quiet_NaN();
  trace.outside_regime = !(static_cast<double>(c.k) <= trace.regime_value);

  IntSet A;
  BootstrapState state;
  for (int colour = 1; colour <= c.k; ++colour) {
    IntSet cls = induced_shifted_set(c, colour);
    if (cls.size() > A.size()) {
      A = std::move(cls);
      state.colour = colour;
    }
  }
  state.ambient = Progression::interval(c.N0);
  for (int colour = 1; colour <= c.k; ++colour) state.allowed.push_back(colour);
  trace.initial_size = static_cast<std::int64_t>(A.size());
  trace.initial_colour = state.colour;
  trace.alpha0 = static_cast<double>(A.size()) / static_cast<double>(c.N0);

  for (int i = 0; i < params.max_steps; ++i) {
    std::optional<Progression> refined;
    try {
      const std::size_t si = static_cast<std::size_t>(i);
      if (si < params.dbar_schedule.size() && params.dbar_schedule[si] > 1) {
        const std::int64_t dbar = params.dbar_schedule[si];
        const Progression P = refine_to_modulus(A, state.ambient, dbar);
        IntSet kept;
        std::copy_if(A.begin(), A.end(), std::back_inserter(kept), [&](std::int64_t a) { return P.contains(a); });
        A = std::move(kept);
        refined = P;
        state.ambient = P;
        state.dbar = dbar;
      }
      BootstrapStepResult r = bootstrap_step(c, A, state, params, table);
      r.record.i = i;
      r.record.refined = refined;
      trace.steps.push_back(r.record);
      if (r.witness) {
        trace.witness = r.witness;
        trace.terminal = "witness";
        return trace;
      }
      A = std::move(r.next);
      state = std::move(r.next_state);
    } catch (const InvariantViolation& e) {
      trace.terminal = std::string(e.what()).find("colour exhaustion") != std::string::npos ? "exhaustion" : "error";
      trace.message = e.what();
      return trace;
    } catch (const std::exception& e) {
      trace.terminal = "error";
      trace.message = e.what();
      return trace;
    }
  }
  trace.terminal = "error";
  trace.message = "bootstrap_run: step limit reached";
  return trace;
}

}  // namespace schurlab
