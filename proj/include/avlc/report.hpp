#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "avlc/eval.hpp"

namespace avlc {

enum class ReportFormat { Csv, Text };

/// Columns: codec,total_cost,written_zeros,written_ones,metadata_bits,
/// blocks,fallbacks,normalized_to_fnw. Costs are exact ("p" or "p/q");
/// normalized_to_fnw is empty when FNW was not evaluated.
void write_csv(std::ostream& out, const CostReport& report);
/// Aligned table with the same numbers plus decimal approximations.
void write_text(std::ostream& out, const CostReport& report);
/// Two columns, codec,normalized_cost, as decimals. Rows without a
/// normalized value are omitted.
void write_chart(std::ostream& out, const CostReport& report);

/// Writes the report to `path` and, when given, chart data to `chart`.
/// Throws IoError if a file cannot be written.
void emit_report(const CostReport& report, ReportFormat format, const std::filesystem::path& path,
                 const std::optional<std::filesystem::path>& chart = std::nullopt);

}  // namespace avlc
