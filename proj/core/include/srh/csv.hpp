#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "srh/simulate.hpp"

namespace srh {

/// 17 significant digits, shortest exact round trip for doubles.
std::string format_number(double value);

/// Comma-separated table with a header row; all columns must share a length.
void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::span<const double>>& columns);

void write_csv_file(const std::filesystem::path& file,
                    const std::vector<std::string>& header,
                    const std::vector<std::span<const double>>& columns);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  const std::vector<double>& column(const std::string& name) const;
};

/// Reads a numeric CSV with a header row.
CsvTable read_csv_file(const std::filesystem::path& file);

/// Path CSV with columns (t, x); t_j must equal (j + 1) delta.
PathSample read_path_csv(const std::filesystem::path& file);
void write_path_csv(const std::filesystem::path& file, const PathSample& path);

}  // namespace srh
