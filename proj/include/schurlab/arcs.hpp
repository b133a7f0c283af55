#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "schurlab/prime_core.hpp"
#include "schurlab/spectral.hpp"

namespace schurlab {

/// The major arc {θ in T : |θ - a/q| <= 1/(qQ)}.
struct Arc {
  std::int64_t a = 1;
  std::int64_t q = 1;
  std::int64_t Q = 1;

  double center() const { return static_cast<double>(a) / static_cast<double>(q); }
  double half_width() const { return 1.0 / (static_cast<double>(q) * static_cast<double>(Q)); }
  /// Exact membership test on the circle (θ is read as the dyadic rational it stores).
  bool contains(double theta) const;
};

/// Arcs grouped by denominator; stored for q <= q_limit (defaults to Q).
class ArcDecomposition {
 public:
  explicit ArcDecomposition(std::int64_t Q, std::int64_t q_limit = 0);

  std::int64_t Q() const noexcept { return Q_; }
  std::int64_t q_limit() const noexcept { return static_cast<std::int64_t>(by_q_.size()) - 1; }
  /// The arcs making up M*_q, a ascending.
  const std::vector<Arc>& arcs(std::int64_t q) const;

  /// The parts of `arc` not covered by any arc with a smaller denominator, as closed
  /// intervals on the real line around arc.center(). Together over all q <= Q these
  /// pieces tile T.
  std::vector<std::pair<double, double>> exclusive_pieces(const Arc& arc) const;

 private:
  std::int64_t Q_;
  std::vector<std::vector<Arc>> by_q_;
};

/// Dirichlet's theorem made constructive: the last continued-fraction convergent a/q of θ
/// with q <= Q, which satisfies |θ - a/q| < 1/(qQ). Computed in exact rational arithmetic.
Arc locate_arc(double theta, std::int64_t Q);

enum class ArcMeasure {
  Union,      ///< integrate over M*_q itself
  Exclusive,  ///< only over the part of M*_q outside every M*_{q'} with q' < q
};

/// ∫_{M*_q} |f^(θ)|^2 dθ by the composite trapezoid rule with samples_per_arc points per
/// arc (exclusive pieces get points in proportion to their length, never fewer than 2).
double arc_energy(const FiniteSignal& f, std::int64_t q, const ArcDecomposition& decomp, int samples_per_arc,
                  ArcMeasure measure = ArcMeasure::Union);

struct ArcEnergyConvergence {
  double coarse = 0.0;  ///< with samples_per_arc
  double fine = 0.0;    ///< with 2 * samples_per_arc - 1 (every coarse node kept)
  double relative_change = 0.0;
};
ArcEnergyConvergence arc_energy_convergence(const FiniteSignal& f, std::int64_t q, const ArcDecomposition& decomp,
                                            int samples_per_arc, ArcMeasure measure = ArcMeasure::Union);

struct FtAtZeroReport {
  std::uint64_t N = 0;
  std::uint64_t d = 1;
  std::uint64_t dbar = 1;
  double exact = 0.0;      ///< F^(0) by direct summation of the weight
  double psi_value = 0.0;  ///< ψ(d̄dN + 1; d̄d, 1)
  double identity_error = 0.0;  ///< |exact - psi_value| / max(|psi_value|, 1)
  double main_term = 0.0;       ///< d̄dN / φ(d̄d)
  std::optional<double> ratio;  ///< exact / main_term; empty when N = 0
};
FtAtZeroReport ft_at_zero_check(std::uint64_t N, std::uint64_t d, const ExceptionalContext& ctx,
                                const PrimeTable& table);

struct MajorArcRow {
  std::int64_t q = 1;
  std::int64_t a = 1;
  double delta = 0.0;
  double abs_value = 0.0;  ///< |F^(a/q + δ)|
  double reference = 0.0;  ///< |F^(0)| / φ(q)
  double ratio = 0.0;      ///< abs_value / reference
};

/// {0, ±1/(4N), ±1/(2N), ±1/N}; just {0} when N = 0.
std::vector<double> default_delta_grid(std::uint64_t N);

/// Rows ordered by q, then a, then position in delta_grid. Empty when F^(0) = 0.
std::vector<MajorArcRow> major_arc_report(std::uint64_t N, std::uint64_t d, const ExceptionalContext& ctx,
                                          std::int64_t q_max, const std::vector<double>& delta_grid,
                                          const PrimeTable& table);

struct MinorArcRow {
  double theta = 0.0;
  std::int64_t a = 1;
  std::int64_t q = 1;
  double abs_value = 0.0;  ///< |F^(θ)|
  double bound = 0.0;      ///< d (log N)^4 (N/√q + N^{4/5} + √(NQ))
  double ratio = 0.0;      ///< abs_value / bound
};

/// Samples θ uniformly (seeded), keeps those whose Dirichlet arc for Q has q > q_threshold,
/// and compares |F^(θ)| with the minor-arc bound shape.
std::vector<MinorArcRow> minor_arc_report(std::uint64_t N, std::uint64_t d, const ExceptionalContext& ctx,
                                          std::int64_t Q, std::int64_t q_threshold, std::size_t sample_count,
                                          std::uint64_t seed, const PrimeTable& table);

}  // namespace schurlab
