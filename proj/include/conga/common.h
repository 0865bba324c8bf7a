#ifndef CONGA_COMMON_H_
#define CONGA_COMMON_H_

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace conga {

using Vertex = int32_t;
using EdgeId = int32_t;

// Nonnegative per-vertex budget.
using VertexWeighting = std::vector<double>;
// Per-vertex net inflow; entries sum to zero.
using Demand = std::vector<double>;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Bad input from the caller or from a file (CLI exit code 2).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed byte or text stream; carries the byte offset of the failure.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, size_t offset)
      : InputError(what + " (at offset " + std::to_string(offset) + ")"),
        offset_(offset) {}
  size_t offset() const { return offset_; }

 private:
  size_t offset_;
};

// A precondition of an internal step did not hold (CLI exit code 3).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Scale-aware absolute tolerance used by every conservation check.
inline double conservation_tolerance(double total_capacity) {
  return 1e-9 * (1.0 + total_capacity);
}

}  // namespace conga

#endif  // CONGA_COMMON_H_
