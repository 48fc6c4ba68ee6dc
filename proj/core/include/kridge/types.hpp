#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace kridge {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class Method { elementwise, hard_rank, nuclear_relaxed };

std::string_view to_string(Method m);
Method method_from_string(std::string_view name);

/// Factorization or solver breakdown that jitter could not fix.
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input file (CSV or model JSON). `line` is 1-based, 0 if unknown.
struct parse_error : std::runtime_error {
  explicit parse_error(const std::string& what, std::size_t line_no = 0)
      : std::runtime_error(what), line(line_no) {}
  std::size_t line;
};

/// Failure to read or write an output artifact.
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Kernel order outside the half-integer family handled in v1.
struct unsupported_order_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace kridge
