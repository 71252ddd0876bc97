#pragma once

#include <stdexcept>
#include <string>

namespace tbi {

/// Failure categories. The numeric values double as CLI exit codes.
enum class ErrorKind : int {
  Parse = 1,      ///< unreadable input or shape mismatch
  Form = 2,       ///< extension tensor is not alternating
  Structure = 3,  ///< degenerate period matrix
  Riemann = 4,    ///< (V, U) not on the parameter variety of A
  Tolerance = 5,  ///< verdict too close to the threshold to trust
  Domain = 6,     ///< argument outside the domain of a formula
  Sampling = 7,   ///< random generation exhausted its attempts
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  int exit_code() const noexcept { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace tbi
