#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "schurlab/arcs.hpp"
#include "schurlab/increment.hpp"
#include "schurlab/regularity.hpp"

namespace schurlab {

/// Ordered key/value pairs echoed at the top of every artifact.
using RunConfig = std::vector<std::pair<std::string, std::string>>;

/// 15 significant digits, '.' decimal point, "nan"/"inf" spelled out.
std::string format_real(double x);

using CsvRow = std::vector<std::string>;

/// "# key=value" lines, the header row, then the rows.
void write_csv(std::ostream& out, const RunConfig& config, const CsvRow& header, const std::vector<CsvRow>& rows);

void write_primes_csv(std::ostream& out, const RunConfig& config, const PrimeTable& table, std::uint64_t limit);
/// ψ(x; q, a) for x = step, 2 step, ..., limit and every a coprime to q.
void write_psi_csv(std::ostream& out, const RunConfig& config, const PrimeTable& table, std::uint64_t limit,
                   std::uint64_t q, std::uint64_t step);

void write_ft_zero_csv(std::ostream& out, const RunConfig& config, const std::optional<FtAtZeroReport>& report);
void write_major_csv(std::ostream& out, const RunConfig& config, const std::vector<MajorArcRow>& rows);
void write_minor_csv(std::ostream& out, const RunConfig& config, const std::vector<MinorArcRow>& rows);

void write_threshold_csv(std::ostream& out, const RunConfig& config, const ThresholdResult& result);
void write_location_csv(std::ostream& out, const RunConfig& config, const PrimeLocation& loc);
void write_translate_csv(std::ostream& out, const RunConfig& config, const TranslateResult& result);

/// First line {"config": {...}}, then one line per step, then {"terminal": ...}.
void write_trace_jsonl(std::ostream& out, const RunConfig& config, const BootstrapTrace& trace);

}  // namespace schurlab
