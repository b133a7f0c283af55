// schurlab: command-line front end. Every artifact starts with its full configuration.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "schurlab/arcs.hpp"
#include "schurlab/errors.hpp"
#include "schurlab/increment.hpp"
#include "schurlab/io.hpp"
#include "schurlab/parallel.hpp"
#include "schurlab/regularity.hpp"
#include "schurlab/report.hpp"
#include "schurlab/simd/kernels.hpp"

namespace {

using namespace schurlab;

constexpr const char* kVersion = "0.1.0";

enum Exit { kOk = 0, kIo = 1, kUsage = 2, kBudget = 3, kInvariant = 4 };

// Signals a finished run whose artifact was written but whose outcome maps to a nonzero exit.
struct ExitWith {
  int code;
  std::string message;
};

RunConfig base_config(const std::string& command) {
  return {{"command", command}, {"version", kVersion}, {"isa", std::string(simd::isa_name(simd::active_isa()))}};
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot write " + path);
  return out;
}

std::string num(double x) { return format_real(x); }

ExceptionalContext make_context(std::uint64_t dbar, bool exceptional) {
  const ExceptionalContext ctx{dbar, exceptional};
  ctx.validate();
  return ctx;
}

// sieve ----------------------------------------------------------------------------------

struct SieveArgs {
  std::uint64_t limit = 0;
  std::string out;
  std::uint64_t psi_modulus = 0;
  std::uint64_t psi_step = 0;
  std::string psi_out;
};

void run_sieve(const SieveArgs& a) {
  RunConfig cfg = base_config("sieve");
  cfg.emplace_back("limit", std::to_string(a.limit));
  const PrimeTable table(std::max<std::uint64_t>(a.limit, 1));
  auto out = open_out(a.out);
  write_primes_csv(out, cfg, table, a.limit);
  if (a.psi_modulus > 0) {
    if (a.psi_out.empty()) throw DomainError("--psi-modulus needs --psi-out");
    const std::uint64_t step = a.psi_step > 0 ? a.psi_step : std::max<std::uint64_t>(1, a.limit / 100);
    cfg.emplace_back("psi_modulus", std::to_string(a.psi_modulus));
    cfg.emplace_back("psi_step", std::to_string(step));
    auto psi_out = open_out(a.psi_out);
    write_psi_csv(psi_out, cfg, table, a.limit, a.psi_modulus, step);
  }
}

// arcs -----------------------------------------------------------------------------------

struct ArcsArgs {
  std::uint64_t length = 0;
  std::uint64_t modulus = 1;
  std::uint64_t dbar = 1;
  bool exceptional = false;
  std::int64_t q_max = 10;
  std::int64_t arc_q = 0;
  std::int64_t q_min = 10;
  std::size_t samples = 64;
  std::uint64_t seed = 1;
  std::string out;
};

void run_arcs(const ArcsArgs& a) {
  const ExceptionalContext ctx = make_context(a.dbar, a.exceptional);
  if (a.modulus < 1) throw DomainError("--modulus must be at least 1");
  const std::int64_t Q = a.arc_q > 0 ? a.arc_q
                                     : std::max<std::int64_t>(1, static_cast<std::int64_t>(std::sqrt(static_cast<double>(a.length))));
  RunConfig cfg = base_config("arcs");
  cfg.insert(cfg.end(), {{"length", std::to_string(a.length)},
                         {"modulus", std::to_string(a.modulus)},
                         {"dbar", std::to_string(a.dbar)},
                         {"exceptional", a.exceptional ? "true" : "false"},
                         {"q_max", std::to_string(a.q_max)},
                         {"arc_q", std::to_string(Q)},
                         {"q_min", std::to_string(a.q_min)},
                         {"samples", std::to_string(a.samples)},
                         {"seed", std::to_string(a.seed)}});

  const std::uint64_t d_total = a.dbar * a.modulus;
  const PrimeTable table(std::max<std::uint64_t>(d_total * a.length + 1, 2));
  std::optional<FtAtZeroReport> ft;
  std::vector<MajorArcRow> major;
  std::vector<MinorArcRow> minor;
  if (a.length > 0) {
    ft = ft_at_zero_check(a.length, a.modulus, ctx, table);
    major = major_arc_report(a.length, a.modulus, ctx, a.q_max, default_delta_grid(a.length), table);
    if (d_total <= a.length) minor = minor_arc_report(a.length, a.modulus, ctx, Q, a.q_min, a.samples, a.seed, table);
  }
  auto f1 = open_out(a.out + "_ft_zero.csv");
  write_ft_zero_csv(f1, cfg, ft);
  auto f2 = open_out(a.out + "_major.csv");
  write_major_csv(f2, cfg, major);
  auto f3 = open_out(a.out + "_minor.csv");
  write_minor_csv(f3, cfg, minor);
}

// schur ----------------------------------------------------------------------------------

struct SchurArgs {
  std::string kind = "integers";
  int colours = 2;
  std::int64_t n_max = 0;
  std::uint64_t seed = 0;
  std::string order = "ascending";
  std::string branch = "forward";
  std::uint64_t budget = 50'000'000;
  std::string out;
  std::string witness_out;
};

void run_schur(const SchurArgs& a) {
  SearchOptions opt;
  opt.budget = a.budget;
  opt.seed = a.seed;
  opt.value_order = a.order == "descending" ? ValueOrder::Descending
                    : a.order == "random"   ? ValueOrder::Random
                                            : ValueOrder::Ascending;
  opt.branch_order = a.branch == "reverse" ? BranchOrder::Reverse : BranchOrder::Forward;
  if (a.n_max < 1) throw DomainError("--n-max must be at least 1");

  RunConfig cfg = base_config("schur");
  cfg.insert(cfg.end(), {{"kind", a.kind},
                         {"colours", std::to_string(a.colours)},
                         {"n_max", std::to_string(a.n_max)},
                         {"seed", std::to_string(a.seed)},
                         {"order", a.order},
                         {"branch", a.branch},
                         {"budget", std::to_string(a.budget)}});

  ThresholdResult r;
  if (a.kind == "integers") {
    r = schur_oracle(a.colours, a.n_max, opt);
  } else {
    const PrimeTable table(static_cast<std::uint64_t>(std::max<std::int64_t>(a.n_max, 2)));
    r = rp_threshold(a.colours, a.n_max, table, opt);
  }
  auto out = open_out(a.out);
  write_threshold_csv(out, cfg, r);
  if (!a.witness_out.empty()) {
    auto w = open_out(a.witness_out);
    for (const auto& [k, v] : cfg) w << "# " << k << '=' << v << '\n';
    if (a.kind == "integers") {
      w << "k=" << a.colours << " N=" << r.lower_bound << '\n';
      for (std::size_t i = 0; i < r.elements.size(); ++i) w << r.elements[i] << ' ' << r.colours[i] << '\n';
    } else {
      Colouring c{r.lower_bound, a.colours, {}, r.colours};
      for (const auto e : r.elements) c.primes.push_back(e + 1);
      write_colouring(w, c);
    }
  }
  if (r.budget_exhausted) {
    throw ExitWith{kBudget, "search budget exhausted; certified lower bound " + std::to_string(r.lower_bound)};
  }
}

// bootstrap ------------------------------------------------------------------------------

struct BootstrapArgs {
  std::string colouring;
  std::string out;
  double c = 1.0 / 2;
  double c1 = 1.0 / 32;
  std::vector<std::int64_t> dbar_schedule;
  int max_steps = 64;
};

void run_bootstrap(const BootstrapArgs& a) {
  const Colouring c = read_colouring_file(a.colouring);
  BootstrapParams params;
  params.iteration.c = a.c;
  params.iteration.c1 = a.c1;
  params.dbar_schedule = a.dbar_schedule;
  params.max_steps = a.max_steps;

  std::string schedule;
  for (const auto d : a.dbar_schedule) schedule += (schedule.empty() ? "" : ";") + std::to_string(d);
  RunConfig cfg = base_config("bootstrap");
  cfg.insert(cfg.end(), {{"colouring", a.colouring},
                         {"k", std::to_string(c.k)},
                         {"N0", std::to_string(c.N0)},
                         {"c", num(a.c)},
                         {"c1", num(a.c1)},
                         {"dbar_schedule", schedule},
                         {"max_steps", std::to_string(a.max_steps)}});

  const PrimeTable table(static_cast<std::uint64_t>(2 * c.N0 + 2));
  const BootstrapTrace trace = bootstrap_run(c, params, table);
  auto out = open_out(a.out);
  write_trace_jsonl(out, cfg, trace);
  if (trace.terminal != "witness") throw ExitWith{kInvariant, "bootstrap ended without a witness: " + trace.message};
}

// increment ------------------------------------------------------------------------------

struct IncrementArgs {
  std::string set;
  std::int64_t length = 0;
  std::int64_t start = 1;
  std::int64_t modulus = 1;
  std::uint64_t dbar = 1;
  bool exceptional = false;
  double c = 1.0 / 8;
  double c1 = 1.0 / 32;
  std::int64_t q1 = 0;
  std::int64_t min_len = 0;
  std::string out;
  std::string primes_out;
};

void run_increment(const IncrementArgs& a) {
  const ExceptionalContext ctx = make_context(a.dbar, a.exceptional);
  const IntSet A = read_set_file(a.set);
  const Progression ambient{a.start, static_cast<std::int64_t>(a.dbar) * a.modulus, a.length};
  IterationParams params{a.c, a.c1, a.q1, a.min_len};

  RunConfig cfg = base_config("increment");
  cfg.insert(cfg.end(), {{"set", a.set},
                         {"length", std::to_string(a.length)},
                         {"start", std::to_string(a.start)},
                         {"modulus", std::to_string(a.modulus)},
                         {"dbar", std::to_string(a.dbar)},
                         {"exceptional", a.exceptional ? "true" : "false"},
                         {"c", num(a.c)},
                         {"c1", num(a.c1)},
                         {"q1", std::to_string(a.q1)},
                         {"min_len", std::to_string(a.min_len)}});

  const std::int64_t reach = std::max<std::int64_t>(ambient.length > 0 ? ambient.last() : 0, 0);
  const PrimeTable table(static_cast<std::uint64_t>(2 * reach + 2));
  const PrimeLocation loc = iterate_to_primes(A, ambient, a.modulus, ctx, params, table);
  cfg.emplace_back("step_cap", std::to_string(loc.step_cap));
  auto out = open_out(a.out);
  write_location_csv(out, cfg, loc);
  if (!a.primes_out.empty()) {
    auto p = open_out(a.primes_out);
    write_set(p, loc.original_differences());
  }
}

// translate ------------------------------------------------------------------------------

struct TranslateArgs {
  std::string x, y;
  Progression xprog, yprog;
  std::string out;
};

void run_translate(const TranslateArgs& a) {
  const IntSet X = read_set_file(a.x);
  const IntSet Y = read_set_file(a.y);
  RunConfig cfg = base_config("translate");
  cfg.insert(cfg.end(), {{"x", a.x},
                         {"x_start", std::to_string(a.xprog.start)},
                         {"x_step", std::to_string(a.xprog.step)},
                         {"x_length", std::to_string(a.xprog.length)},
                         {"y", a.y},
                         {"y_start", std::to_string(a.yprog.start)},
                         {"y_step", std::to_string(a.yprog.step)},
                         {"y_length", std::to_string(a.yprog.length)}});
  const TranslateResult r = best_translate(X, a.xprog, Y, a.yprog);
  auto out = open_out(a.out);
  write_translate_csv(out, cfg, r);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Computational experiments on monochromatic p1 - p2 = p3 - 1 in colourings of the primes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  unsigned threads = 0;
  std::string isa = "auto";
  app.add_option("--threads", threads, "Worker threads (0 = hardware concurrency)")->capture_default_str();
  app.add_option("--isa", isa, "Kernel instruction set")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}))
      ->capture_default_str();
  app.fallthrough();

  SieveArgs sieve;
  auto* s = app.add_subcommand("sieve", "List primes, optionally with a psi table");
  s->add_option("--limit", sieve.limit, "Sieve up to this integer")->required();
  s->add_option("--out", sieve.out, "CSV of primes")->required();
  s->add_option("--psi-modulus", sieve.psi_modulus, "Also tabulate psi(x; q, a) for this q");
  s->add_option("--psi-step", sieve.psi_step, "Spacing of x in the psi table (default limit/100)");
  s->add_option("--psi-out", sieve.psi_out, "CSV of psi values");

  ArcsArgs arcs;
  auto* ar = app.add_subcommand("arcs", "Exponential sums of the prime weight at zero, on major arcs and on minor arcs");
  ar->add_option("--length", arcs.length, "N, the length of the weight")->required();
  ar->add_option("--modulus", arcs.modulus, "d, the weight is Lambda(dbar d n + 1)")->capture_default_str();
  ar->add_option("--dbar", arcs.dbar, "Exceptional modulus dbar")->capture_default_str();
  ar->add_flag("--exceptional", arcs.exceptional, "Declare the context exceptional (required when dbar > 1)");
  ar->add_option("--q-max", arcs.q_max, "Largest q in the major-arc report")->capture_default_str();
  ar->add_option("--arc-q", arcs.arc_q, "Arc parameter Q for minor arcs (default floor(sqrt N))");
  ar->add_option("--q-min", arcs.q_min, "Minor arcs keep theta whose denominator exceeds this")->capture_default_str();
  ar->add_option("--samples", arcs.samples, "Number of minor-arc samples")->capture_default_str();
  ar->add_option("--seed", arcs.seed, "Seed of the minor-arc sampler")->capture_default_str();
  ar->add_option("--out", arcs.out, "Output prefix; writes <prefix>_ft_zero.csv, _major.csv, _minor.csv")->required();

  SchurArgs schur;
  auto* sc = app.add_subcommand("schur", "Exact Schur-type thresholds by backtracking");
  sc->add_option("--kind", schur.kind, "integers (x + y = z on [N]) or shifted_primes (p1 - p2 = p3 - 1)")
      ->check(CLI::IsMember({"integers", "shifted_primes"}))
      ->capture_default_str();
  sc->add_option("--colours", schur.colours, "Number of colours k")->capture_default_str();
  sc->add_option("--n-max", schur.n_max, "Largest N examined")->required();
  sc->add_option("--seed", schur.seed, "Seed for --order random")->capture_default_str();
  sc->add_option("--order", schur.order, "Colour value order")
      ->check(CLI::IsMember({"ascending", "descending", "random"}))
      ->capture_default_str();
  sc->add_option("--branch", schur.branch, "Top-level branch order")
      ->check(CLI::IsMember({"forward", "reverse"}))
      ->capture_default_str();
  sc->add_option("--budget", schur.budget, "Search nodes per decision")->capture_default_str();
  sc->add_option("--out", schur.out, "CSV with the threshold or lower bound")->required();
  sc->add_option("--witness-out", schur.witness_out, "Avoiding colouring certifying the lower bound");

  BootstrapArgs boot;
  auto* bo = app.add_subcommand("bootstrap", "Run the colour-shrinking bootstrap on a colouring file");
  bo->add_option("--colouring", boot.colouring, "Colouring file")->required();
  bo->add_option("--out", boot.out, "JSON-lines trace")->required();
  bo->add_option("--c", boot.c, "N' = floor(c alpha N)")->capture_default_str();
  bo->add_option("--c1", boot.c1, "Density gain factor")->capture_default_str();
  bo->add_option("--dbar-schedule", boot.dbar_schedule, "Modulus injected before each step (1 = none)")->delimiter(',');
  bo->add_option("--max-steps", boot.max_steps, "Step limit")->capture_default_str();

  IncrementArgs inc;
  auto* in = app.add_subcommand("increment", "Iterate the increment dichotomy on a set until shifted primes appear");
  in->add_option("--set", inc.set, "Set file")->required();
  in->add_option("--length", inc.length, "Length of the ambient progression")->required();
  in->add_option("--start", inc.start, "First term of the ambient progression")->capture_default_str();
  in->add_option("--modulus", inc.modulus, "d; the ambient step is dbar d")->capture_default_str();
  in->add_option("--dbar", inc.dbar, "Exceptional modulus dbar")->capture_default_str();
  in->add_flag("--exceptional", inc.exceptional, "Declare the context exceptional (required when dbar > 1)");
  in->add_option("--c", inc.c, "N' = floor(c alpha N)")->capture_default_str();
  in->add_option("--c1", inc.c1, "Density gain factor")->capture_default_str();
  in->add_option("--q1", inc.q1, "Largest increment step (0 = automatic)")->capture_default_str();
  in->add_option("--min-len", inc.min_len, "Shortest increment (0 = automatic)")->capture_default_str();
  in->add_option("--out", inc.out, "CSV of the iteration log")->required();
  in->add_option("--primes-out", inc.primes_out, "Set file of the located differences");

  TranslateArgs tr;
  auto* t = app.add_subcommand("translate", "Best translate of Y into X");
  t->add_option("--x", tr.x, "Set file X")->required();
  t->add_option("--x-start", tr.xprog.start, "X progression start")->required();
  t->add_option("--x-step", tr.xprog.step, "X progression step")->required();
  t->add_option("--x-length", tr.xprog.length, "X progression length")->required();
  t->add_option("--y", tr.y, "Set file Y")->required();
  t->add_option("--y-start", tr.yprog.start, "Y progression start")->required();
  t->add_option("--y-step", tr.yprog.step, "Y progression step")->required();
  t->add_option("--y-length", tr.yprog.length, "Y progression length")->required();
  t->add_option("--out", tr.out, "CSV with the translate")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    set_thread_count(threads);
    simd::select_isa(simd::parse_isa(isa));
    if (s->parsed()) run_sieve(sieve);
    if (ar->parsed()) run_arcs(arcs);
    if (sc->parsed()) run_schur(schur);
    if (bo->parsed()) run_bootstrap(boot);
    if (in->parsed()) run_increment(inc);
    if (t->parsed()) run_translate(tr);
  } catch (const ExitWith& e) {
    std::cerr << "schurlab: " << e.message << '\n';
    return e.code;
  } catch (const BudgetExhausted& e) {
    std::cerr << "schurlab: " << e.what() << '\n';
    return kBudget;
  } catch (const InvariantViolation& e) {
    std::cerr << "schurlab: invariant violation: " << e.what() << '\n';
    return kInvariant;
  } catch (const CertificateFailure& e) {
    std::cerr << "schurlab: certificate failure: " << e.what() << '\n';
    return kInvariant;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "schurlab: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "schurlab: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}
