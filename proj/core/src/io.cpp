#include "kridge/io.hpp"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <system_error>

namespace kridge {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string::size_type start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    std::string field = line.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    // trim surrounding whitespace
    const auto first = field.find_first_not_of(" \t");
    const auto last = field.find_last_not_of(" \t");
    fields.push_back(first == std::string::npos
                         ? std::string()
                         : field.substr(first, last - first + 1));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return fields;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open " + path.string());

  std::string line;
  if (!std::getline(in, line))
    throw parse_error(path.string() + ": empty file, expected a header row",
                      1);
  strip_cr(line);
  CsvTable table;
  table.header = split_fields(line);
  if (table.header.empty() ||
      (table.header.size() == 1 && table.header[0].empty()))
    throw parse_error(path.string() + ": empty header row", 1);

  std::vector<std::vector<double>> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() != table.header.size())
      throw parse_error(path.string() + ": line " + std::to_string(lineno) +
                            ": expected " + std::to_string(table.header.size()) +
                            " fields, got " + std::to_string(fields.size()),
                        lineno);
    std::vector<double> row;
    row.reserve(fields.size());
    for (const std::string& field : fields) {
      const char* begin = field.c_str();
      char* end = nullptr;
      errno = 0;
      const double v = std::strtod(begin, &end);
      if (field.empty() || end != begin + field.size() || errno == ERANGE)
        throw parse_error(path.string() + ": line " + std::to_string(lineno) +
                              ": '" + field + "' is not a number",
                          lineno);
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }

  table.values.resize(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(table.header.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      table.values(static_cast<Eigen::Index>(i),
                   static_cast<Eigen::Index>(j)) = rows[i][j];
  return table;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header, const Matrix& values) {
  if (header.empty()) throw std::invalid_argument("write_csv: empty header");
  if (values.rows() > 0 &&
      values.cols() != static_cast<Eigen::Index>(header.size()))
    throw std::invalid_argument("write_csv: column count mismatch");
  std::ostringstream out;
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (j > 0) out << ',';
    out << header[j];
  }
  out << '\n';
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_double(values(i, j));
    }
    out << '\n';
  }
  write_text_atomic(path, out.str());
}

void write_text_atomic(const std::filesystem::path& path,
                       std::string_view content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(),
              static_cast<std::streamsize>(content.size()));
    if (!out) throw io_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec)
    throw io_error("cannot rename " + tmp.string() + " to " + path.string() +
                   ": " + ec.message());
}

}  // namespace kridge
