#include "schurlab/arcs.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "schurlab/errors.hpp"
#include "schurlab/parallel.hpp"

namespace schurlab {
namespace {

using boost::multiprecision::cpp_int;

double reduce_mod_one(double theta) {
  const double r = theta - std::floor(theta);
  return r >= 1.0 ? 0.0 : r;
}

// θ in [0, 1) as the exact fraction num / den with den a power of two.
struct Dyadic {
  cpp_int num;
  cpp_int den;
};

Dyadic to_dyadic(double theta) {
  if (theta == 0.0) return {cpp_int(0), cpp_int(1)};
  int e = 0;
  const double f = std::frexp(theta, &e);  // theta = f * 2^e, f in [1/2, 1)
  auto m = static_cast<std::uint64_t>(std::ldexp(f, 53));
  int k = 53 - e;
  while (k > 0 && (m & 1u) == 0) {
    m >>= 1;
    --k;
  }
  return {cpp_int(m), cpp_int(1) << k};
}

// |θ - a/q - t| <= 1/(qQ) for some integer t.
bool within_arc(const Dyadic& x, std::int64_t a, std::int64_t q, std::int64_t Q) {
  for (std::int64_t t = -1; t <= 1; ++t) {
    cpp_int diff = x.num * q - cpp_int(a + t * q) * x.den;
    if (diff < 0) diff = -diff;
    if (diff * Q <= x.den) return true;
  }
  return false;
}

struct SamplePoint {
  double theta;
  double weight;
};

void add_trapezoid(double lo, double hi, std::size_t points, std::vector<SamplePoint>& out) {
  if (points < 2 || hi <= lo) return;
  const double h = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    const double w = (i == 0 || i + 1 == points) ? h / 2 : h;
    out.push_back({lo + h * static_cast<double>(i), w});
  }
}

double arc_half_width(const Arc& arc) { return std::min(arc.half_width(), 0.5); }

std::vector<SamplePoint> sample_points(std::int64_t q, const ArcDecomposition& decomp, int samples_per_arc,
                                       ArcMeasure measure) {
  std::vector<SamplePoint> pts;
  for (const Arc& arc : decomp.arcs(q)) {
    const double w = arc_half_width(arc);
    if (measure == ArcMeasure::Union) {
      add_trapezoid(arc.center() - w, arc.center() + w, static_cast<std::size_t>(samples_per_arc), pts);
      continue;
    }
    const double h = 2 * w / static_cast<double>(samples_per_arc - 1);
    for (const auto& [lo, hi] : decomp.exclusive_pieces(arc)) {
      const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / h)) + 1;
      add_trapezoid(lo, hi, std::max<std::size_t>(n, 2), pts);
    }
  }
  return pts;
}

double integrate(const FiniteSignal& f, const std::vector<SamplePoint>& pts) {
  std::vector<double> values(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) { values[i] = std::norm(dft_at(f, pts[i].theta)); });
  double total = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) total += pts[i].weight * values[i];
  return total;
}

}  // namespace

bool Arc::contains(double theta) const { return within_arc(to_dyadic(reduce_mod_one(theta)), a, q, Q); }

ArcDecomposition::ArcDecomposition(std::int64_t Q, std::int64_t q_limit) : Q_(Q) {
  if (Q < 1) throw DomainError("ArcDecomposition: Q must be at least 1");
  if (q_limit <= 0 || q_limit > Q) q_limit = Q;
  by_q_.resize(static_cast<std::size_t>(q_limit) + 1);
  for (std::int64_t q = 1; q <= q_limit; ++q) {
    for (std::int64_t a = 1; a <= q; ++a) {
      if (std::gcd(a, q) == 1) by_q_[static_cast<std::size_t>(q)].push_back({a, q, Q});
    }
  }
}

const std::vector<Arc>& ArcDecomposition::arcs(std::int64_t q) const {
  if (q < 1 || q > q_limit()) {
    throw RangeError("ArcDecomposition: denominator " + std::to_string(q) + " outside 1.." +
                     std::to_string(q_limit()));
  }
  return by_q_[static_cast<std::size_t>(q)];
}

std::vector<std::pair<double, double>> ArcDecomposition::exclusive_pieces(const Arc& arc) const {
  const double w = arc_half_width(arc);
  std::vector<std::pair<double, double>> pieces{{arc.center() - w, arc.center() + w}};
  const double x = arc.center();
  for (std::int64_t qp = 1; qp < arc.q && !pieces.empty(); ++qp) {
    const double rw = 1.0 / (static_cast<double>(qp) * static_cast<double>(Q_));
    const auto base = static_cast<std::int64_t>(std::floor(x * static_cast<double>(qp)));
    for (std::int64_t ap = base - 1; ap <= base + 2; ++ap) {
      const std::int64_t r = ((ap % qp) + qp) % qp;
      if (std::gcd(r, qp) != 1 && qp != 1) continue;
      const double c = static_cast<double>(ap) / static_cast<double>(qp);
      const double lo = c - rw, hi = c + rw;
      std::vector<std::pair<double, double>> next;
      for (const auto& [plo, phi] : pieces) {
        if (hi <= plo || lo >= phi) {
          next.emplace_back(plo, phi);
          continue;
        }
        if (lo > plo) next.emplace_back(plo, lo);
        if (hi < phi) next.emplace_back(hi, phi);
      }
      pieces = std::move(next);
    }
  }
  return pieces;
}

Arc locate_arc(double theta, std::int64_t Q) {
  if (Q < 1) throw DomainError("locate_arc: Q must be at least 1");
  const Dyadic x = to_dyadic(reduce_mod_one(theta));

  // Convergents p/q of num/den; stop before the denominator exceeds Q.
  cpp_int p_prev = 1, q_prev = 0;
  cpp_int p_cur = 0, q_cur = 1;  // a0 = 0 since θ < 1
  cpp_int num = x.den, rem = x.num;
  while (rem != 0) {
    const cpp_int digit = num / rem;
    const cpp_int next_rem = num % rem;
    const cpp_int q_next = digit * q_cur + q_prev;
    if (q_next > Q) break;
    const cpp_int p_next = digit * p_cur + p_prev;
    p_prev = p_cur;
    q_prev = q_cur;
    p_cur = p_next;
    q_cur = q_next;
    num = rem;
    rem = next_rem;
  }

  const auto q = static_cast<std::int64_t>(q_cur);
  auto a = static_cast<std::int64_t>(p_cur % q_cur);
  if (a == 0) a = q;
  Arc arc{a, q, Q};
  if (!within_arc(x, a, q, Q)) {
    throw InvariantViolation("locate_arc: convergent " + std::to_string(a) + "/" + std::to_string(q) +
                             " misses the Dirichlet width");
  }
  return arc;
}

double arc_energy(const FiniteSignal& f, std::int64_t q, const ArcDecomposition& decomp, int samples_per_arc,
                  ArcMeasure measure) {
  if (samples_per_arc < 3) throw DomainError("arc_energy: samples_per_arc must be at least 3");
  if (f.empty()) return 0.0;
  return integrate(f, sample_points(q, decomp, samples_per_arc, measure));
}

ArcEnergyConvergence arc_energy_convergence(const FiniteSignal& f, std::int64_t q, const ArcDecomposition& decomp,
                                            int samples_per_arc, ArcMeasure measure) {
  ArcEnergyConvergence out;
  out.coarse = arc_energy(f, q, decomp, samples_per_arc, measure);
  out.fine = arc_energy(f, q, decomp, 2 * samples_per_arc - 1, measure);
  const double scale = std::max(std::abs(out.fine), std::abs(out.coarse));
  out.relative_change = scale > 0 ? std::abs(out.fine - out.coarse) / scale : 0.0;
  return out;
}

FtAtZeroReport ft_at_zero_check(std::uint64_t N, std::uint64_t d, const ExceptionalContext& ctx,
                                const PrimeTable& table) {
  const WeightedSequence w = build_weight(N, d, ctx, table);
  FtAtZeroReport r;
  r.N = N;
  r.d = d;
  r.dbar = ctx.dbar;
  const std::uint64_t modulus = w.d_total;
  r.exact = dft_at(FiniteSignal::from_weight(w), 0.0).real();
  r.psi_value = psi(modulus * N + 1, modulus, 1 % modulus, table);
  r.identity_error = std::abs(r.exact - r.psi_value) / std::max(std::abs(r.psi_value), 1.0);
  r.main_term = static_cast<double>(modulus) * static_cast<double>(N) / static_cast<double>(euler_phi(modulus));
  if (N > 0) r.ratio = r.exact / r.main_term;
  return r;
}

std::vector<double> default_delta_grid(std::uint64_t N) {
  if (N == 0) return {0.0};
  const double n = static_cast<double>(N);
  return {0.0, 1.0 / (4 * n), -1.0 / (4 * n), 1.0 / (2 * n), -1.0 / (2 * n), 1.0 / n, -1.0 / n};
}

std::vector<MajorArcRow> major_arc_report(std::uint64_t N, std::uint64_t d, const ExceptionalContext& ctx,
                                          std::int64_t q_max, const std::vector<double>& delta_grid,
                                          const PrimeTable& table) {
  if (q_max < 1) throw DomainError("major_arc_report: q_max must be at least 1");
  for (const double delta : delta_grid) {
    if (std::abs(delta) > 0.5) throw DomainError("major_arc_report: every delta must lie in [-1/2, 1/2]");
  }
  const FiniteSignal f = FiniteSignal::from_weight(build_weight(N, d, ctx, table));
  const double at_zero = std::abs(dft_at(f, 0.0));
  std::vector<MajorArcRow> rows;
  if (at_zero == 0.0) return rows;

  for (std::int64_t q = 1; q <= q_max; ++q) {
    const double reference = at_zero / static_cast<double>(euler_phi(static_cast<std::uint64_t>(q)));
    for (std::int64_t a = 1; a <= q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      for (const double delta : delta_grid) rows.push_back({q, a, delta, 0.0, reference, 0.0});
    }
  }
  parallel_for(rows.size(), [&](std::size_t i) {
    auto& row = rows[i];
    const double theta = static_cast<double>(row.a) / static_cast<double>(row.q) + row.delta;
    row.abs_value = std::abs(dft_at(f, theta));
    row.ratio = row.abs_value / row.reference;
  });
  return rows;
}

std::vector<MinorArcRow> minor_arc_report(std::uint64_t N, std::uint64_t d, const ExceptionalContext& ctx,
                                          std::int64_t Q, std::int64_t q_threshold, std::size_t sample_count,
                                          std::uint64_t seed, const PrimeTable& table) {
  std::vector<MinorArcRow> rows;
  if (sample_count == 0 || N == 0) return rows;
  ctx.validate();
  if (Q < 1) throw DomainError("minor_arc_report: Q must be at least 1");
  const std::uint64_t d_total = ctx.dbar * d;
  if (d_total > N) throw DomainError("minor_arc_report: requires d <= N");

  std::mt19937_64 rng(seed);
  const std::size_t max_draws = 1000 * sample_count;
  for (std::size_t draw = 0; draw < max_draws && rows.size() < sample_count; ++draw) {
    const double theta = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const Arc arc = locate_arc(theta, Q);
    if (arc.q <= q_threshold) continue;
    rows.push_back({theta, arc.a, arc.q, 0.0, 0.0, 0.0});
  }

  const FiniteSignal f = FiniteSignal::from_weight(build_weight(N, d, ctx, table));
  const double n = static_cast<double>(N);
  const double log4 = std::pow(std::log(n), 4);
  parallel_for(rows.size(), [&](std::size_t i) {
    auto& row = rows[i];
    row.abs_value = std::abs(dft_at(f, row.theta));
    row.bound = static_cast<double>(d_total) * log4 *
                (n / std::sqrt(static_cast<double>(row.q)) + std::pow(n, 0.8) + std::sqrt(n * static_cast<double>(Q)));
    row.ratio = row.bound > 0 ? row.abs_value / row.bound : 0.0;
  });
  return rows;
}

}  // namespace schurlab
