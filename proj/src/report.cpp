#include "avlc/report.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include "avlc/errors.hpp"

namespace avlc {

void write_csv(std::ostream& out, const CostReport& report) {
  out << "codec,total_cost,written_zeros,written_ones,metadata_bits,blocks,fallbacks,normalized_to_fnw\n";
  for (const auto& r : report.rows) {
    out << to_string(r.codec) << ',' << to_string(r.total_cost) << ',' << r.counts.data_zeros << ','
        << r.counts.data_ones << ',' << r.counts.meta_bits() << ',' << r.blocks << ',' << r.fallbacks
        << ',' << (r.normalized_to_fnw ? to_string(*r.normalized_to_fnw) : std::string()) << '\n';
  }
}

void write_text(std::ostream& out, const CostReport& report) {
  const std::vector<std::string> head = {"codec",         "total_cost", "written_zeros",
                                         "written_ones",  "metadata",   "blocks",
                                         "fallbacks",     "vs_fnw"};
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : report.rows) {
    rows.push_back({std::string(to_string(r.codec)), to_decimal(r.total_cost, 3),
                    std::to_string(r.counts.data_zeros), std::to_string(r.counts.data_ones),
                    std::to_string(r.counts.meta_bits()), std::to_string(r.blocks),
                    std::to_string(r.fallbacks),
                    r.normalized_to_fnw ? to_decimal(*r.normalized_to_fnw, 6) : "-"});
  }
  std::vector<std::size_t> width(head.size());
  for (std::size_t c = 0; c < head.size(); ++c) {
    width[c] = head[c].size();
    for (const auto& row : rows) width[c] = std::max(width[c], row[c].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c == 0) {
        out << std::left << std::setw(static_cast<int>(width[c])) << cells[c];
      } else {
        out << "  " << std::right << std::setw(static_cast<int>(width[c])) << cells[c];
      }
    }
    out << '\n';
  };
  line(head);
  for (const auto& row : rows) line(row);
  for (const auto& r : report.rows) {
    out << "# " << to_string(r.codec) << " total_cost = " << to_string(r.total_cost) << '\n';
  }
}

void write_chart(std::ostream& out, const CostReport& report) {
  out << "codec,normalized_cost\n";
  for (const auto& r : report.rows) {
    if (r.normalized_to_fnw) out << to_string(r.codec) << ',' << to_decimal(*r.normalized_to_fnw, 6) << '\n';
  }
}

namespace {

template <typename Fn>
void write_file(const std::filesystem::path& path, Fn&& fn) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  fn(out);
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace

void emit_report(const CostReport& report, ReportFormat format, const std::filesystem::path& path,
                 const std::optional<std::filesystem::path>& chart) {
  write_file(path, [&](std::ostream& out) {
    format == ReportFormat::Csv ? write_csv(out, report) : write_text(out, report);
  });
  if (chart) write_file(*chart, [&](std::ostream& out) { write_chart(out, report); });
}

}  // namespace avlc
