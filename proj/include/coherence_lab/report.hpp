// Tabular output shared by every CLI subcommand. Cells are formatted once,
// so the CSV and aligned-text renderings carry the same numeric strings.
#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace coherence_lab::report {

enum class Format { Table, Csv };

Format parse_format(std::string_view name);

/// %.15g, with -0 printed as 0.
std::string format_number(double value);
std::string format_number(std::uint64_t value);

class Table {
 public:
  explicit Table(std::vector<std::string> header);

  void add_row(std::vector<std::string> cells);
  const std::vector<std::string>& header() const noexcept { return header_; }
  const std::vector<std::vector<std::string>>& rows() const noexcept { return rows_; }

  void write_csv(std::ostream& os) const;
  void write_text(std::ostream& os) const;
  void write(std::ostream& os, Format format) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace coherence_lab::report
