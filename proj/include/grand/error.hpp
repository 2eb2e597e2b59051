#pragma once

#include <stdexcept>
#include <string>

namespace grand {

/// Error categories. The CLI maps these onto process exit codes
/// (parse -> 2, invalid_knowledge/inconsistent -> 3, capacity -> 4).
enum class errc {
  parse,             // malformed input file
  invalid_knowledge, // E0/E1 overlap or self-loop pairs
  inconsistent,      // inputs contradict each other (G* vs G^2)
  capacity,          // an enumeration budget was exceeded
  contract,          // API misuse: dimension mismatch, bad argument
  undefined_metric,  // metric denominator is zero
  numerical,         // eigendecomposition failure and friends
};

class error : public std::runtime_error {
 public:
  error(errc kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
  errc kind() const noexcept { return kind_; }

 private:
  errc kind_;
};

}  // namespace grand
