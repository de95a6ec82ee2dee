#include "coherence_lab/report.hpp"

#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <stdexcept>

namespace coherence_lab::report {

Format parse_format(std::string_view name) {
  if (name == "table") return Format::Table;
  if (name == "csv") return Format::Csv;
  throw std::invalid_argument("unknown format '" + std::string(name) + "' (expected table or csv)");
}

std::string format_number(double value) {
  if (value == 0.0) value = 0.0;
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.15g", value);
  return buffer;
}

std::string format_number(std::uint64_t value) { return std::to_string(value); }

Table::Table(std::vector<std::string> header) : header_(std::move(header)) {}

void Table::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size())
    throw std::logic_error("row has " + std::to_string(cells.size()) + " cells, header has " +
                           std::to_string(header_.size()));
  rows_.push_back(std::move(cells));
}

void Table::write_csv(std::ostream& os) const {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const bool quote = cells[i].find_first_of(",\"\n") != std::string::npos;
      if (i) os << ',';
      if (quote) {
        os << '"';
        for (char c : cells[i]) os << (c == '"' ? "\"\"" : std::string(1, c));
        os << '"';
      } else {
        os << cells[i];
      }
    }
    os << '\n';
  };
  line(header_);
  for (const auto& row : rows_) line(row);
}

void Table::write_text(std::ostream& os) const {
  std::vector<std::size_t> widths(header_.size());
  for (std::size_t i = 0; i < header_.size(); ++i) widths[i] = header_[i].size();
  for (const auto& row : rows_)
    for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os << "  ";
      if (i + 1 == cells.size())
        os << cells[i];
      else
        os << std::left << std::setw(static_cast<int>(widths[i])) << cells[i];
    }
    os << '\n';
  };
  line(header_);
  std::size_t total = 0;
  for (std::size_t w : widths) total += w;
  os << std::string(total + 2 * (widths.empty() ? 0 : widths.size() - 1), '-') << '\n';
  for (const auto& row : rows_) line(row);
}

void Table::write(std::ostream& os, Format format) const {
  if (format == Format::Csv)
    write_csv(os);
  else
    write_text(os);
}

}  // namespace coherence_lab::report
