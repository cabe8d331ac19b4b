#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sigw {

// One value formatted with `precision` significant digits ("%.{p}g").
std::string format_sig(double value, int precision = 12);

// Header plus uniform-width numeric rows, comma separated, newline
// terminated. Throws std::invalid_argument on empty or ragged input.
void emit_csv(std::ostream& out, const std::vector<std::string>& header,
              const std::vector<std::vector<double>>& rows, int precision = 12);

// Same, writing to a file; throws std::runtime_error when the path is not
// writable.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows, int precision = 12);

}  // namespace sigw
