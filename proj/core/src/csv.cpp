#include "srh/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "srh/errors.hpp"

namespace srh {

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::span<const double>>& columns) {
  if (header.size() != columns.size()) {
    throw DomainError("write_csv: header and column counts differ");
  }
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns) {
    if (c.size() != rows) throw DomainError("write_csv: columns differ in length");
  }
  for (std::size_t j = 0; j < header.size(); ++j) out << (j ? "," : "") << header[j];
  out << '\n';
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j) {
      out << (j ? "," : "") << format_number(columns[j][i]);
    }
    out << '\n';
  }
}

void write_csv_file(const std::filesystem::path& file,
                    const std::vector<std::string>& header,
                    const std::vector<std::span<const double>>& columns) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + file.string() + "' for writing");
  write_csv(out, header, columns);
  if (!out) throw std::runtime_error("write failed for '" + file.string() + "'");
}

const std::vector<double>& CsvTable::column(const std::string& name) const {
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (header[j] == name) return columns[j];
  }
  throw DomainError("CSV has no column '" + name + "'");
}

CsvTable read_csv_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open '" + file.string() + "'");
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw DomainError("empty CSV '" + file.string() + "'");
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) table.header.push_back(cell);
  }
  table.columns.resize(table.header.size());
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::size_t j = 0;
    while (std::getline(ss, cell, ',')) {
      if (j >= table.columns.size()) break;
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0) {
        throw DomainError("non-numeric value on line " + std::to_string(lineno) + " of '" +
                          file.string() + "'");
      }
      table.columns[j++].push_back(v);
    }
    if (j != table.columns.size()) {
      throw DomainError("wrong column count on line " + std::to_string(lineno) + " of '" +
                        file.string() + "'");
    }
  }
  return table;
}

PathSample read_path_csv(const std::filesystem::path& file) {
  const CsvTable table = read_csv_file(file);
  const auto& t = table.column("t");
  const auto& x = table.column("x");
  if (t.size() < 2) throw DomainError("path CSV needs >= 2 rows");
  PathSample path{t[0], x};
  validate(path);
  for (std::size_t j = 0; j < t.size(); ++j) {
    if (std::abs(t[j] - path.time(j)) > 1e-9 * std::max(1.0, std::abs(t[j]))) {
      throw DomainError("path CSV times must be (j + 1) * delta");
    }
  }
  return path;
}

void write_path_csv(const std::filesystem::path& file, const PathSample& path) {
  std::vector<double> t(path.size());
  for (std::size_t j = 0; j < t.size(); ++j) t[j] = path.time(j);
  write_csv_file(file, {"t", "x"}, {t, path.values});
}

}  // namespace srh
