#include <algorithm>
#include <atomic>
#include <limits>
#include <numeric>
#include <random>

#include "schurlab/errors.hpp"
#include "schurlab/parallel.hpp"
#include "schurlab/regularity.hpp"

namespace schurlab {
namespace {

constexpr std::size_t kPrefixDepth = 8;

class Bitset {
 public:
  explicit Bitset(std::size_t n) : words_((n + 64) / 64, 0) {}
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

 private:
  std::vector<std::uint64_t> words_;
};

// Partial colouring of a prefix of the elements with per-class sum sets.
class State {
 public:
  State(const std::vector<std::int64_t>& elements, int k)
      : e_(elements), k_(k), maxv_(elements.empty() ? 0 : elements.back()),
        index_(static_cast<std::size_t>(maxv_) + 1, -1), sums_(k, Bitset(static_cast<std::size_t>(maxv_) + 1)),
        classes_(k) {
    for (std::size_t i = 0; i < e_.size(); ++i) index_[static_cast<std::size_t>(e_[i])] = static_cast<int>(i);
  }

  std::size_t depth() const { return colours_.size(); }
  bool complete() const { return colours_.size() == e_.size(); }
  int used() const { return used_; }
  const std::vector<int>& colours() const { return colours_; }

  /// Colours (0-based) the next element may take, honouring the symmetry breaking.
  void candidates(std::vector<int>& out) const {
    out.clear();
    const auto v = static_cast<std::size_t>(e_[depth()]);
    const int limit = std::min(used_ + 1, k_);
    for (int c = 0; c < limit; ++c) {
      if (!sums_[c].test(v)) out.push_back(c);
    }
  }

  /// Colours the next element; false if some later element is left without a colour.
  bool push(int c) {
    const std::int64_t v = e_[depth()];
    Frame frame{c, used_, added_.size()};
    classes_[c].push_back(v);
    colours_.push_back(c);
    if (c == used_) ++used_;
    bool alive = true;
    for (const auto a : classes_[c]) {
      const std::int64_t s = a + v;
      if (s > maxv_) break;
      const auto su = static_cast<std::size_t>(s);
      if (sums_[c].test(su)) continue;
      sums_[c].set(su);
      added_.push_back(su);
      if (alive && used_ == k_ && index_[su] > static_cast<int>(depth()) - 1 && blocked_everywhere(su)) alive = false;
    }
    frames_.push_back(frame);
    return alive;
  }

  void pop() {
    const Frame f = frames_.back();
    frames_.pop_back();
    for (std::size_t i = f.added; i < added_.size(); ++i) sums_[f.colour].reset(added_[i]);
    added_.resize(f.added);
    classes_[f.colour].pop_back();
    colours_.pop_back();
    used_ = f.used;
  }

 private:
  struct Frame {
    int colour;
    int used;
    std::size_t added;
  };

  bool blocked_everywhere(std::size_t v) const {
    for (int c = 0; c < k_; ++c) {
      if (!sums_[c].test(v)) return false;
    }
    return true;
  }

  const std::vector<std::int64_t>& e_;
  int k_;
  std::int64_t maxv_;
  std::vector<int> index_;
  std::vector<Bitset> sums_;
  std::vector<std::vector<std::int64_t>> classes_;  // ascending within each class
  std::vector<int> colours_;
  std::vector<std::size_t> added_;
  std::vector<Frame> frames_;
  int used_ = 0;
};

struct Subtree {
  std::vector<int> prefix;
  SearchStatus status = SearchStatus::Indeterminate;
  std::vector<int> colours;
  std::uint64_t nodes = 0;
};

class Dfs {
 public:
  Dfs(State& state, const SearchOptions& options, std::uint64_t budget, std::uint64_t seed,
      const std::atomic<std::size_t>* winner, std::size_t my_rank)
      : state_(state), options_(options), budget_(budget), rng_(seed), winner_(winner), rank_(my_rank) {}

  SearchStatus run() {
    const Outcome o = visit();
    if (o == Outcome::Found) return SearchStatus::Avoidable;
    if (o == Outcome::Exhausted) return SearchStatus::Forced;
    return SearchStatus::Indeterminate;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  enum class Outcome { Found, Exhausted, Stopped };

  Outcome visit() {
    if (state_.complete()) return Outcome::Found;
    if (++nodes_ > budget_) return Outcome::Stopped;
    if (winner_ != nullptr && (nodes_ & 1023) == 0 && winner_->load(std::memory_order_relaxed) < rank_) {
      return Outcome::Stopped;
    }
    std::vector<int> cands;
    state_.candidates(cands);
    switch (options_.value_order) {
      case ValueOrder::Ascending: break;
      case ValueOrder::Descending: std::reverse(cands.begin(), cands.end()); break;
      case ValueOrder::Random: std::shuffle(cands.begin(), cands.end(), rng_); break;
    }
    for (const int c : cands) {
      const bool alive = state_.push(c);
      const Outcome o = alive ? visit() : Outcome::Exhausted;
      if (o == Outcome::Found) return o;
      state_.pop();
      if (o == Outcome::Stopped) return o;
    }
    return Outcome::Exhausted;
  }

  State& state_;
  const SearchOptions& options_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::mt19937_64 rng_;
  const std::atomic<std::size_t>* winner_;
  std::size_t rank_;
};

void collect_prefixes(State& state, std::size_t depth, std::vector<Subtree>& out, std::uint64_t& nodes) {
  ++nodes;
  if (state.depth() == depth) {
    out.push_back(Subtree{state.colours(), SearchStatus::Indeterminate, {}, 0});
    return;
  }
  std::vector<int> cands;
  state.candidates(cands);
  for (const int c : cands) {
    if (state.push(c)) collect_prefixes(state, depth, out, nodes);
    state.pop();
  }
}

void check_elements(const std::vector<std::int64_t>& elements, int k) {
  if (k < 1) throw DomainError("colouring search: k must be at least 1");
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i] < 1 || (i > 0 && elements[i] <= elements[i - 1])) {
      throw DomainError("colouring search: elements must be positive and strictly increasing");
    }
  }
}

std::vector<int> to_one_based(std::vector<int> colours) {
  for (auto& c : colours) ++c;
  return colours;
}

}  // namespace

std::string to_string(SearchStatus status) {
  switch (status) {
    case SearchStatus::Forced: return "forced";
    case SearchStatus::Avoidable: return "avoidable";
    case SearchStatus::Indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

bool is_sum_free_colouring(const std::vector<std::int64_t>& elements, const std::vector<int>& colours) {
  if (colours.size() != elements.size()) return false;
  for (std::size_t z = 0; z < elements.size(); ++z) {
    for (std::size_t x = 0; x < z; ++x) {
      if (colours[x] != colours[z]) continue;
      const std::int64_t y = elements[z] - elements[x];
      const auto it = std::lower_bound(elements.begin(), elements.end(), y);
      if (it != elements.end() && *it == y && colours[static_cast<std::size_t>(it - elements.begin())] == colours[z]) {
        return false;
      }
    }
  }
  return true;
}

SearchStatus sum_free_enumerate(const std::vector<std::int64_t>& elements, int k) {
  check_elements(elements, k);
  const std::size_t n = elements.size();
  std::vector<int> colours(n, 1);
  while (true) {
    if (is_sum_free_colouring(elements, colours)) return SearchStatus::Avoidable;
    std::size_t i = 0;
    while (i < n && colours[i] == k) colours[i++] = 1;
    if (i == n) return SearchStatus::Forced;
    ++colours[i];
  }
}

SearchResult sum_free_search(const std::vector<std::int64_t>& elements, int k, const SearchOptions& options) {
  check_elements(elements, k);
  SearchResult result;
  if (elements.empty()) {
    result.status = SearchStatus::Avoidable;
    return result;
  }

  std::vector<Subtree> subtrees;
  {
    State state(elements, k);
    collect_prefixes(state, std::min(kPrefixDepth, elements.size()), subtrees, result.nodes);
  }
  if (subtrees.empty()) {
    result.status = SearchStatus::Forced;
    return result;
  }
  if (options.branch_order == BranchOrder::Reverse) std::reverse(subtrees.begin(), subtrees.end());

  const std::uint64_t share = std::max<std::uint64_t>(1, options.budget / subtrees.size());
  std::atomic<std::size_t> winner{std::numeric_limits<std::size_t>::max()};
  parallel_for(subtrees.size(), [&](std::size_t rank) {
    if (winner.load() < rank) return;
    Subtree& t = subtrees[rank];
    State state(elements, k);
    bool alive = true;
    for (const int c : t.prefix) alive = state.push(c) && alive;
    if (!alive) {
      t.status = SearchStatus::Forced;
      return;
    }
    Dfs dfs(state, options, share, options.seed ^ (0x9e3779b97f4a7c15ull * (rank + 1)), &winner, rank);
    t.status = dfs.run();
    t.nodes = dfs.nodes();
    if (t.status == SearchStatus::Avoidable) {
      t.colours = state.colours();
      std::size_t cur = winner.load();
      while (rank < cur && !winner.compare_exchange_weak(cur, rank)) {
      }
    }
  });

  // Subtrees before the winner all ran to completion, so this merge is schedule independent.
  bool indeterminate = false;
  for (auto& t : subtrees) {
    result.nodes += t.nodes;
    if (t.status == SearchStatus::Avoidable) {
      result.status = SearchStatus::Avoidable;
      result.colours = to_one_based(std::move(t.colours));
      return result;
    }
    if (t.status == SearchStatus::Indeterminate) indeterminate = true;
  }
  result.status = indeterminate ? SearchStatus::Indeterminate : SearchStatus::Forced;
  return result;
}

std::optional<std::vector<int>> random_restart_hunt(const std::vector<std::int64_t>& elements, int k,
                                                    int restarts, std::uint64_t budget_per_restart,
                                                    std::uint64_t seed) {
  check_elements(elements, k);
  SearchOptions options;
  options.value_order = ValueOrder::Random;
  for (int r = 0; r < restarts; ++r) {
    State state(elements, k);
    Dfs dfs(state, options, budget_per_restart, seed + static_cast<std::uint64_t>(r), nullptr, 0);
    if (dfs.run() == SearchStatus::Avoidable) return to_one_based(state.colours());
  }
  return std::nullopt;
}

RpCheck verify_rp(int k, std::int64_t N, const PrimeTable& table, const SearchOptions& options) {
  if (k < 1) throw DomainError("verify_rp: k must be at least 1");
  if (N > 0 && static_cast<std::uint64_t>(N) > table.limit()) {
    throw RangeError("verify_rp: prime table does not reach " + std::to_string(N));
  }
  std::vector<std::int64_t> shifted;
  for (const auto p : table.primes()) {
    if (static_cast<std::int64_t>(p) > N) break;
    shifted.push_back(static_cast<std::int64_t>(p) - 1);
  }
  const SearchResult r = sum_free_search(shifted, k, options);
  RpCheck out{r.status, std::nullopt, r.nodes};
  if (r.status == SearchStatus::Avoidable) {
    Colouring c;
    c.N0 = std::max<std::int64_t>(N, 0);
    c.k = k;
    for (std::size_t i = 0; i < shifted.size(); ++i) c.primes.push_back(shifted[i] + 1);
    c.colours = r.colours;
    if (find_mono_solution(c)) throw InvariantViolation("verify_rp: avoiding colouring contains a solution");
    out.avoiding = std::move(c);
  }
  return out;
}

namespace {

// Greedy extension of a known avoiding colouring by one element; empty when impossible.
std::optional<std::vector<int>> extend(const std::vector<std::int64_t>& elements, const std::vector<int>& colours, int k) {
  if (colours.empty()) return std::nullopt;
  for (int c = 1; c <= k; ++c) {
    auto next = colours;
    next.push_back(c);
    // Only the new element can complete a triple.
    const std::int64_t z = elements.back();
    bool ok = true;
    for (std::size_t x = 0; ok && x + 1 < elements.size(); ++x) {
      if (next[x] != c) continue;
      const std::int64_t y = z - elements[x];
      const auto it = std::lower_bound(elements.begin(), elements.end(), y);
      if (it != elements.end() && *it == y && next[static_cast<std::size_t>(it - elements.begin())] == c) ok = false;
    }
    if (ok) return next;
  }
  return std::nullopt;
}

// Sweeps the thresholds: elements[i] becomes available at size sizes[i].
ThresholdResult sweep(const std::vector<std::int64_t>& elements, const std::vector<std::int64_t>& sizes, int k,
                      std::int64_t n_max, const SearchOptions& options) {
  ThresholdResult out;
  out.lower_bound = n_max;
  std::vector<std::int64_t> prefix;
  std::vector<int> colours;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    prefix.push_back(elements[i]);
    if (auto ext = extend(prefix, colours, k)) {
      colours = std::move(*ext);
      continue;
    }
    const SearchResult r = sum_free_search(prefix, k, options);
    out.nodes += r.nodes;
    if (r.status == SearchStatus::Avoidable) {
      colours = r.colours;
      continue;
    }
    prefix.pop_back();
    out.lower_bound = sizes[i] - 1;
    if (r.status == SearchStatus::Forced) {
      out.value = sizes[i];
    } else {
      out.budget_exhausted = true;
    }
    break;
  }
  if (!is_sum_free_colouring(prefix, colours)) throw InvariantViolation("threshold sweep: certificate is not sum-free");
  out.elements = std::move(prefix);
  out.colours = std::move(colours);
  return out;
}

}  // namespace

ThresholdResult rp_threshold(int k, std::int64_t N_max, const PrimeTable& table, const SearchOptions& options) {
  if (k < 1) throw DomainError("rp_threshold: k must be at least 1");
  if (N_max > 0 && static_cast<std::uint64_t>(N_max) > table.limit()) {
    throw RangeError("rp_threshold: prime table does not reach " + std::to_string(N_max));
  }
  std::vector<std::int64_t> shifted;
  for (const auto p : table.primes()) {
    if (static_cast<std::int64_t>(p) > N_max) break;
    shifted.push_back(static_cast<std::int64_t>(p) - 1);
  }
  std::vector<std::int64_t> sizes(shifted.size());
  std::transform(shifted.begin(), shifted.end(), sizes.begin(), [](std::int64_t e) { return e + 1; });
  ThresholdResult out = sweep(shifted, sizes, k, N_max, options);
  Colouring c;
  c.N0 = out.lower_bound;
  c.k = k;
  for (const auto e : out.elements) c.primes.push_back(e + 1);
  c.colours = out.colours;
  if (find_mono_solution(c)) throw InvariantViolation("rp_threshold: certificate contains a solution");
  return out;
}

ThresholdResult schur_oracle(int k, std::int64_t n_max, const SearchOptions& options) {
  if (k < 1) throw DomainError("schur_oracle: k must be at least 1");
  std::vector<std::int64_t> integers(static_cast<std::size_t>(std::max<std::int64_t>(n_max, 0)));
  std::iota(integers.begin(), integers.end(), std::int64_t{1});
  return sweep(integers, integers, k, n_max, options);
}

}  // namespace schurlab
