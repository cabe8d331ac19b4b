#include "sigwaste/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace sigw {

std::string format_sig(double value, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, value);
  return buf;
}

void emit_csv(std::ostream& out, const std::vector<std::string>& header,
              const std::vector<std::vector<double>>& rows, int precision) {
  if (header.empty()) throw std::invalid_argument("emit_csv: empty header");
  if (rows.empty()) throw std::invalid_argument("emit_csv: no rows");
  for (const auto& row : rows)
    if (row.size() != header.size())
      throw std::invalid_argument("emit_csv: ragged row");
  for (std::size_t i = 0; i < header.size(); ++i)
    out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << format_sig(row[i], precision);
    out << '\n';
  }
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows, int precision) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_csv: cannot open " + path);
  emit_csv(out, header, rows, precision);
  out.flush();
  if (!out) throw std::runtime_error("write_csv: write failed for " + path);
}

}  // namespace sigw
