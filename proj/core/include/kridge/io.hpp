#pragma once

#include "kridge/types.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace kridge {

struct CsvTable {
  std::vector<std::string> header;
  Matrix values;  // rows x header.size()
};

/// Read a comma-separated file with a mandatory header row. Every data cell
/// must parse as a double; violations raise parse_error with the 1-based
/// line number. A header-only file yields a 0-row table.
CsvTable read_csv(const std::filesystem::path& path);

/// Write a CSV with shortest-round-trip doubles, atomically
/// (temp file + rename).
void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header, const Matrix& values);

/// Atomic text write (temp file + rename).
void write_text_atomic(const std::filesystem::path& path,
                       std::string_view content);

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

}  // namespace kridge
