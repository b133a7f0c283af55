#include "schurlab/report.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

#include <json.hpp>

namespace schurlab {
namespace {

using nlohmann::ordered_json;

template <typename T>
std::string cell(T v) {
  if constexpr (std::is_floating_point_v<T>) {
    return format_real(v);
  } else {
    return std::to_string(v);
  }
}

// JSON has no NaN; such values become null.
ordered_json real(double x) { return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr); }

ordered_json to_json(const Progression& p) { return {{"start", p.start}, {"step", p.step}, {"length", p.length}}; }

ordered_json to_json(const SolutionWitness& w) {
  return {{"p1", w.p1}, {"p2", w.p2}, {"p3", w.p3}, {"colour", w.colour}};
}

ordered_json to_json(const StepRecord& s) {
  ordered_json j = {{"k", s.k},
                    {"N", s.N},
                    {"alpha", real(s.alpha)},
                    {"d", s.d},
                    {"ambient", to_json(s.ambient)},
                    {"kind", to_string(s.kind)},
                    {"n_prime", s.cert.n_prime},
                    {"f_hat_zero", real(s.cert.f_hat_zero)},
                    {"inner_product", real(s.cert.inner_product)},
                    {"threshold", real(s.cert.threshold)}};
  if (s.kind == OutcomeKind::Increment) {
    j["increment"] = to_json(s.increment);
    j["q1"] = s.cert.q1;
    j["min_len"] = s.cert.min_len;
    j["target_density"] = real(s.cert.target_density);
    j["achieved_density"] = real(s.cert.achieved_density);
  } else {
    j["shifted_count"] = s.cert.shifted_count;
    j["count_threshold"] = real(s.cert.count_threshold);
    j["count_ratio"] = real(s.cert.count_ratio);
  }
  return j;
}

}  // namespace

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

void write_csv(std::ostream& out, const RunConfig& config, const CsvRow& header, const std::vector<CsvRow>& rows) {
  for (const auto& [k, v] : config) out << "# " << k << '=' << v << '\n';
  auto line = [&](const CsvRow& r) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

void write_primes_csv(std::ostream& out, const RunConfig& config, const PrimeTable& table, std::uint64_t limit) {
  std::vector<CsvRow> rows;
  std::size_t i = 0;
  for (const auto p : table.primes()) {
    if (p > limit) break;
    rows.push_back({cell(++i), cell(p)});
  }
  write_csv(out, config, {"index", "prime"}, rows);
}

void write_psi_csv(std::ostream& out, const RunConfig& config, const PrimeTable& table, std::uint64_t limit,
                   std::uint64_t q, std::uint64_t step) {
  std::vector<CsvRow> rows;
  for (std::uint64_t a = 0; a < q; ++a) {
    if (std::gcd(a, q) != 1) continue;
    for (std::uint64_t x = step; x <= limit; x += step) {
      rows.push_back({cell(x), cell(q), cell(a), cell(psi(x, q, a, table))});
    }
  }
  write_csv(out, config, {"x", "q", "a", "psi"}, rows);
}

void write_ft_zero_csv(std::ostream& out, const RunConfig& config, const std::optional<FtAtZeroReport>& r) {
  std::vector<CsvRow> rows;
  if (r && r->N > 0) {
    rows.push_back({cell(r->N), cell(r->d), cell(r->dbar), cell(r->exact), cell(r->psi_value),
                    cell(r->identity_error), cell(r->main_term), r->ratio ? cell(*r->ratio) : "nan"});
  }
  write_csv(out, config, {"N", "d", "dbar", "exact", "psi", "identity_error", "main_term", "ratio"}, rows);
}

void write_major_csv(std::ostream& out, const RunConfig& config, const std::vector<MajorArcRow>& rows_in) {
  std::vector<CsvRow> rows;
  for (const auto& r : rows_in) {
    rows.push_back({cell(r.q), cell(r.a), cell(r.delta), cell(r.abs_value), cell(r.reference), cell(r.ratio)});
  }
  write_csv(out, config, {"q", "a", "delta", "abs_value", "reference", "ratio"}, rows);
}

void write_minor_csv(std::ostream& out, const RunConfig& config, const std::vector<MinorArcRow>& rows_in) {
  std::vector<CsvRow> rows;
  for (const auto& r : rows_in) {
    rows.push_back({cell(r.theta), cell(r.a), cell(r.q), cell(r.abs_value), cell(r.bound), cell(r.ratio)});
  }
  write_csv(out, config, {"theta", "a", "q", "abs_value", "bound", "ratio"}, rows);
}

void write_threshold_csv(std::ostream& out, const RunConfig& config, const ThresholdResult& r) {
  const std::string status = r.value ? "exact" : (r.budget_exhausted ? "indeterminate" : "lower_bound");
  write_csv(out, config, {"status", "value", "lower_bound", "nodes"},
            {{status, r.value ? cell(*r.value) : "", cell(r.lower_bound), cell(r.nodes)}});
}

void write_location_csv(std::ostream& out, const RunConfig& config, const PrimeLocation& loc) {
  std::vector<CsvRow> rows;
  for (const auto& s : loc.log) {
    const bool inc = s.kind == OutcomeKind::Increment;
    rows.push_back({cell(s.k), cell(s.N), cell(s.alpha), cell(s.d), cell(s.ambient.start), cell(s.ambient.step),
                    to_string(s.kind), cell(s.cert.n_prime), cell(s.cert.f_hat_zero), cell(s.cert.inner_product),
                    cell(s.cert.threshold), inc ? cell(s.increment.start) : "", inc ? cell(s.increment.step) : "",
                    inc ? cell(s.increment.length) : "", inc ? cell(s.cert.achieved_density) : "",
                    inc ? "" : cell(s.cert.shifted_count)});
  }
  write_csv(out, config,
            {"k", "N", "alpha", "d", "ambient_start", "ambient_step", "kind", "n_prime", "f_hat_zero",
             "inner_product", "threshold", "inc_start", "inc_step", "inc_length", "inc_density", "shifted_count"},
            rows);
}

void write_translate_csv(std::ostream& out, const RunConfig& config, const TranslateResult& r) {
  write_csv(out, config, {"n", "size", "bound", "d_prime"},
            {{cell(r.n), cell(r.size), cell(r.bound), cell(r.d_prime)}});
}

void write_trace_jsonl(std::ostream& out, const RunConfig& config, const BootstrapTrace& trace) {
  ordered_json cfg = ordered_json::object();
  for (const auto& [k, v] : config) cfg[k] = v;
  out << ordered_json{{"config", cfg}}.dump() << '\n';

  out << ordered_json{{"initial",
                       {{"N0", trace.N0},
                        {"k", trace.k},
                        {"size", trace.initial_size},
                        {"colour", trace.initial_colour},
                        {"alpha0", real(trace.alpha0)},
                        {"alpha0_reference", real(trace.alpha0_reference)},
                        {"regime_value", real(trace.regime_value)},
                        {"outside_regime", trace.outside_regime}}}}
             .dump()
      << '\n';

  for (const auto& s : trace.steps) {
    ordered_json j = {{"i", s.i},
                      {"N", s.N},
                      {"size", s.size},
                      {"alpha", real(s.alpha)},
                      {"d", s.d},
                      {"dbar", s.dbar},
                      {"colour", s.colour},
                      {"colours_remaining", s.colours_remaining},
                      {"ambient", to_json(s.ambient)},
                      {"outcome", s.outcome}};
    if (s.refined) j["refined"] = to_json(*s.refined);
    if (s.witness) j["witness"] = to_json(*s.witness);
    if (!s.iteration.empty()) {
      j["iteration"] = ordered_json::array();
      for (const auto& it : s.iteration) j["iteration"].push_back(to_json(it));
    }
    if (s.pigeonhole) {
      const auto& p = *s.pigeonhole;
      j["pigeonhole"] = {{"located", p.located},
                         {"class_sizes", p.class_sizes},
                         {"chosen_colour", p.chosen_colour},
                         {"chosen_size", p.chosen_size},
                         {"pigeonhole_bound", real(p.pigeonhole_bound)},
                         {"translate_n", p.translate.n},
                         {"translate_size", p.translate.size},
                         {"translate_bound", real(p.translate.bound)},
                         {"next_size", p.next_size},
                         {"located_set", p.located_set},
                         {"next_set", p.next_set}};
    }
    out << ordered_json{{"step", j}}.dump() << '\n';
  }

  ordered_json term = {{"outcome", trace.terminal}};
  if (trace.witness) term["witness"] = to_json(*trace.witness);
  if (!trace.message.empty()) term["message"] = trace.message;
  out << ordered_json{{"terminal", term}}.dump() << '\n';
}

}  // namespace schurlab
